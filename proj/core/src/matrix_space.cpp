#include "geodid/matrix_space.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace geodid {

namespace {

void require_same_shape(const SymmetricMatrixPoint& a, const SymmetricMatrixPoint& b) {
  if (a.size() != b.size()) {
    throw GridMismatch("matrix sizes differ: " + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()));
  }
}

void check_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvariantViolation("matrix.square", "matrix must be square and nonempty");
  }
  if (!m.allFinite()) throw InvariantViolation("matrix.finite", "matrix has non-finite entries");
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = j + 1; k < m.cols(); ++k) {
      if (std::abs(m(j, k) - m(k, j)) > 1e-10) {
        throw InvariantViolation("matrix.symmetric", "matrix is not symmetric at (" +
                                                         std::to_string(j) + "," +
                                                         std::to_string(k) + ")");
      }
    }
  }
}

}  // namespace

const char* to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Laplacian:
      return "laplacian";
    case MatrixKind::Covariance:
      return "covariance";
    case MatrixKind::Free:
      return "free";
  }
  return "free";
}

MatrixKind matrix_kind_from_string(const std::string& name) {
  if (name == "laplacian") return MatrixKind::Laplacian;
  if (name == "covariance") return MatrixKind::Covariance;
  if (name == "free") return MatrixKind::Free;
  throw InvalidArgument("unknown matrix kind '" + name + "'");
}

SymmetricMatrixPoint::SymmetricMatrixPoint(Eigen::MatrixXd entries, MatrixKind kind)
    : entries_(std::move(entries)), kind_(kind) {
  check_symmetric(entries_);
  if (auto why = kind_violation()) {
    throw InvariantViolation(kind_ == MatrixKind::Laplacian ? "laplacian.structure"
                                                             : "covariance.psd",
                             *why);
  }
}

SymmetricMatrixPoint SymmetricMatrixPoint::without_kind_check(Eigen::MatrixXd entries,
                                                              MatrixKind kind) {
  check_symmetric(entries);
  SymmetricMatrixPoint p;
  p.entries_ = std::move(entries);
  p.kind_ = kind;
  return p;
}

std::optional<std::string> SymmetricMatrixPoint::kind_violation() const {
  const auto& m = entries_;
  switch (kind_) {
    case MatrixKind::Free:
      return std::nullopt;
    case MatrixKind::Laplacian:
      for (Eigen::Index j = 0; j < m.rows(); ++j) {
        if (std::abs(m.row(j).sum()) > 1e-8) {
          return "Laplacian row " + std::to_string(j) + " does not sum to zero";
        }
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
          if (j != k && m(j, k) > 1e-8) {
            return "Laplacian off-diagonal (" + std::to_string(j) + "," + std::to_string(k) +
                   ") is positive";
          }
        }
      }
      return std::nullopt;
    case MatrixKind::Covariance: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
      const double lowest = solver.eigenvalues().minCoeff();
      if (lowest < -1e-8) {
        return "covariance matrix has negative eigenvalue " + std::to_string(lowest);
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

double frobenius_distance(const SymmetricMatrixPoint& a, const SymmetricMatrixPoint& b) {
  require_same_shape(a, b);
  return (a.entries() - b.entries()).norm();
}

SymmetricMatrixPoint matrix_interpolate(const SymmetricMatrixPoint& a,
                                        const SymmetricMatrixPoint& b, double t) {
  require_same_shape(a, b);
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const MatrixKind kind = a.kind() == b.kind() ? a.kind() : MatrixKind::Free;
  // Laplacians and PSD matrices are convex cones; the segment stays inside.
  return SymmetricMatrixPoint::without_kind_check(a.entries() + t * (b.entries() - a.entries()),
                                                  kind);
}

SymmetricMatrixPoint matrix_transport(const SymmetricMatrixPoint& alpha,
                                      const SymmetricMatrixPoint& beta,
                                      const SymmetricMatrixPoint& omega, WarningLog* log) {
  require_same_shape(alpha, beta);
  require_same_shape(alpha, omega);
  auto out = SymmetricMatrixPoint::without_kind_check(
      omega.entries() + (beta.entries() - alpha.entries()), omega.kind());
  if (log != nullptr) {
    if (auto why = out.kind_violation()) log->push_back({WarningKind::KindViolation, *why});
  }
  return out;
}

SymmetricMatrixPoint laplacian_from_adjacency(const Eigen::MatrixXd& weights) {
  check_symmetric(weights);
  const Eigen::Index m = weights.rows();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (weights(j, j) != 0.0) {
      throw InvariantViolation("adjacency.zero_diagonal",
                               "adjacency has a self-loop at node " + std::to_string(j));
    }
    for (Eigen::Index k = 0; k < m; ++k) {
      if (j == k) continue;
      if (weights(j, k) < 0.0) {
        throw InvariantViolation("adjacency.nonnegative", "adjacency weight (" +
                                                              std::to_string(j) + "," +
                                                              std::to_string(k) + ") is negative");
      }
      lap(j, k) = -weights(j, k);
      lap(j, j) += weights(j, k);
    }
  }
  return SymmetricMatrixPoint(std::move(lap), MatrixKind::Laplacian);
}

}  // namespace geodid
