#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geodid/error.hpp"

namespace geodid {

inline constexpr std::size_t kDefaultGridSize = 100;

/// A univariate distribution stored as its quantile function on the midpoint
/// grid p_k = (k + 0.5) / M, k = 0..M-1.
///
/// Values are finite and non-decreasing up to kPointTolerance. Construction
/// from unchecked data throws InvariantViolation; use `repaired` to project
/// noisy input onto the monotone cone instead.
class QuantileCurve {
 public:
  QuantileCurve() = default;
  explicit QuantileCurve(std::vector<double> values);

  /// Pool-adjacent-violators projection whenever monotonicity is broken by
  /// more than kPointTolerance; otherwise identical to the constructor.
  static QuantileCurve repaired(std::vector<double> values);

  /// Gaussian N(mean, sd^2) evaluated exactly on the grid.
  static QuantileCurve gaussian(double mean, double sd, std::size_t grid_size);

  std::size_t grid_size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }

  static double grid_probability(std::size_t k, std::size_t grid_size) noexcept {
    return (static_cast<double>(k) + 0.5) / static_cast<double>(grid_size);
  }

  /// Continuous grid coordinate u in [0, M-1] of F(x), clamped; flat
  /// segments resolve to the leftmost grid index.
  double cdf_index(double x) const;
  /// F(x), clamped to [p_0, p_{M-1}].
  double cdf(double x) const;

  /// Linear interpolation of the stored values at grid coordinate u,
  /// clamped to [0, M-1].
  double quantile_at_index(double u) const;
  /// F^{-1}(p) by linear interpolation between grid probabilities.
  double quantile(double p) const;

  bool is_degenerate() const noexcept;

  friend bool operator==(const QuantileCurve&, const QuantileCurve&) = default;

 private:
  struct Unchecked {};
  QuantileCurve(std::vector<double> values, Unchecked) : values_(std::move(values)) {}

  std::vector<double> values_;

  friend QuantileCurve wasserstein_interpolate(const QuantileCurve&, const QuantileCurve&, double);
  friend QuantileCurve wasserstein_transport(const QuantileCurve&, const QuantileCurve&,
                                             const QuantileCurve&);
};

/// In-place isotonic (non-decreasing) least-squares projection.
void isotonic_projection(std::span<double> values);

/// W2 via midpoint quadrature of the squared quantile difference.
double w2_distance(const QuantileCurve& a, const QuantileCurve& b);

/// McCann interpolant: (1 - t) a + t b in quantile space.
QuantileCurve wasserstein_interpolate(const QuantileCurve& a, const QuantileCurve& b, double t);

/// Optimal-transport push of omega along alpha -> beta:
/// F_beta^{-1} o F_alpha o F_omega^{-1}. F_alpha clamps to the grid range,
/// so values of omega outside alpha's support map to beta's extremes.
/// alpha == beta is the identity. Throws DegenerateTransport for a constant
/// alpha.
QuantileCurve wasserstein_transport(const QuantileCurve& alpha, const QuantileCurve& beta,
                                    const QuantileCurve& omega);

/// Empirical quantiles at the grid probabilities using linear interpolation
/// between order statistics (h = (n - 1) p).
QuantileCurve quantile_from_samples(std::span<const double> samples, std::size_t grid_size);

}  // namespace geodid
