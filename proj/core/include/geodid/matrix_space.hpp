#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "geodid/error.hpp"

namespace geodid {

enum class MatrixKind { Laplacian, Covariance, Free };

const char* to_string(MatrixKind kind);
MatrixKind matrix_kind_from_string(const std::string& name);

/// Symmetric m x m matrix under the Frobenius metric: graph Laplacians,
/// covariance matrices, or unconstrained symmetric matrices.
class SymmetricMatrixPoint {
 public:
  SymmetricMatrixPoint() = default;
  /// Validates symmetry and the kind's structural rules; throws
  /// InvariantViolation naming the rule.
  SymmetricMatrixPoint(Eigen::MatrixXd entries, MatrixKind kind);

  /// Skips the kind rules (symmetry is still required). Used for results of
  /// ambient-space arithmetic whose kind is checked separately.
  static SymmetricMatrixPoint without_kind_check(Eigen::MatrixXd entries, MatrixKind kind);

  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  MatrixKind kind() const noexcept { return kind_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }

  /// Description of the first broken kind rule, if any.
  std::optional<std::string> kind_violation() const;

  friend bool operator==(const SymmetricMatrixPoint& a, const SymmetricMatrixPoint& b) {
    return a.kind_ == b.kind_ && a.entries_.rows() == b.entries_.rows() &&
           a.entries_.cols() == b.entries_.cols() && a.entries_ == b.entries_;
  }

 private:
  Eigen::MatrixXd entries_;
  MatrixKind kind_ = MatrixKind::Free;
};

double frobenius_distance(const SymmetricMatrixPoint& a, const SymmetricMatrixPoint& b);

SymmetricMatrixPoint matrix_interpolate(const SymmetricMatrixPoint& a,
                                        const SymmetricMatrixPoint& b, double t);

/// omega + (beta - alpha). Keeps omega's kind; appends a KindViolation
/// warning to `log` when the result breaks that kind's rules.
SymmetricMatrixPoint matrix_transport(const SymmetricMatrixPoint& alpha,
                                      const SymmetricMatrixPoint& beta,
                                      const SymmetricMatrixPoint& omega,
                                      WarningLog* log = nullptr);

/// L = D - W for a symmetric, zero-diagonal, nonnegative weight matrix.
SymmetricMatrixPoint laplacian_from_adjacency(const Eigen::MatrixXd& weights);

}  // namespace geodid
