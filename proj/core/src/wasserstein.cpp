#include "geodid/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geodid/numeric.hpp"

namespace geodid {

namespace {

void check_values(std::span<const double> v) {
  if (v.empty()) {
    throw InvariantViolation("quantile.nonempty", "quantile curve has no grid values");
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      throw InvariantViolation("quantile.finite",
                               "quantile value at grid index " + std::to_string(k) + " is not finite");
    }
    if (k + 1 < v.size() && v[k] > v[k + 1] + kPointTolerance) {
      throw InvariantViolation("quantile.monotone", "quantile curve decreases at grid index " +
                                                        std::to_string(k));
    }
  }
}

bool violates_monotone(std::span<const double> v) {
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    if (v[k] > v[k + 1] + kPointTolerance) return true;
  }
  return false;
}

void require_same_grid(const QuantileCurve& a, const QuantileCurve& b) {
  if (a.grid_size() != b.grid_size()) {
    throw GridMismatch("quantile grids differ: " + std::to_string(a.grid_size()) + " vs " +
                       std::to_string(b.grid_size()));
  }
}

}  // namespace

QuantileCurve::QuantileCurve(std::vector<double> values) : values_(std::move(values)) {
  check_values(values_);
}

QuantileCurve QuantileCurve::repaired(std::vector<double> values) {
  if (violates_monotone(values)) isotonic_projection(values);
  return QuantileCurve(std::move(values));
}

QuantileCurve QuantileCurve::gaussian(double mean, double sd, std::size_t grid_size) {
  if (grid_size == 0) throw InvalidArgument("grid size must be positive");
  if (!(sd >= 0.0)) throw InvalidArgument("standard deviation must be nonnegative");
  std::vector<double> v(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    v[k] = mean + sd * normal_quantile(grid_probability(k, grid_size));
  }
  return QuantileCurve(std::move(v));
}

double QuantileCurve::cdf_index(double x) const {
  const auto& v = values_;
  const auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.begin()) return 0.0;
  if (it == v.end()) return static_cast<double>(v.size() - 1);
  const auto k = static_cast<std::size_t>(it - v.begin());
  if (*it == x) return static_cast<double>(k);
  const double lo = v[k - 1];
  const double hi = v[k];
  return static_cast<double>(k - 1) + (x - lo) / (hi - lo);
}

double QuantileCurve::cdf(double x) const {
  return (cdf_index(x) + 0.5) / static_cast<double>(values_.size());
}

double QuantileCurve::quantile_at_index(double u) const {
  const double last = static_cast<double>(values_.size() - 1);
  u = std::clamp(u, 0.0, last);
  const auto k = static_cast<std::size_t>(std::floor(u));
  if (k + 1 >= values_.size()) return values_.back();
  const double frac = u - static_cast<double>(k);
  if (frac == 0.0) return values_[k];
  return values_[k] + frac * (values_[k + 1] - values_[k]);
}

double QuantileCurve::quantile(double p) const {
  return quantile_at_index(p * static_cast<double>(values_.size()) - 0.5);
}

bool QuantileCurve::is_degenerate() const noexcept {
  return values_.empty() || values_.back() - values_.front() <= kPointTolerance;
}

void isotonic_projection(std::span<double> values) {
  // Blocks of (mean, weight); merge while the ordering is violated.
  std::vector<double> mean;
  std::vector<std::size_t> weight;
  mean.reserve(values.size());
  weight.reserve(values.size());
  for (double x : values) {
    mean.push_back(x);
    weight.push_back(1);
    while (mean.size() > 1 && mean[mean.size() - 2] > mean.back()) {
      const double m1 = mean.back();
      const std::size_t w1 = weight.back();
      mean.pop_back();
      weight.pop_back();
      const double w0 = static_cast<double>(weight.back());
      mean.back() = (mean.back() * w0 + m1 * static_cast<double>(w1)) / (w0 + static_cast<double>(w1));
      weight.back() += w1;
    }
  }
  std::size_t pos = 0;
  for (std::size_t b = 0; b < mean.size(); ++b) {
    for (std::size_t j = 0; j < weight[b]; ++j) values[pos++] = mean[b];
  }
}

double w2_distance(const QuantileCurve& a, const QuantileCurve& b) {
  require_same_grid(a, b);
  CompensatedSum acc;
  for (std::size_t k = 0; k < a.grid_size(); ++k) {
    const double diff = a[k] - b[k];
    acc.add(diff * diff);
  }
  return std::sqrt(std::max(0.0, acc.value()) / static_cast<double>(a.grid_size()));
}

QuantileCurve wasserstein_interpolate(const QuantileCurve& a, const QuantileCurve& b, double t) {
  require_same_grid(a, b);
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  std::vector<double> v(a.grid_size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = (1.0 - t) * a[k] + t * b[k];
  return QuantileCurve(std::move(v), QuantileCurve::Unchecked{});
}

QuantileCurve wasserstein_transport(const QuantileCurve& alpha, const QuantileCurve& beta,
                                    const QuantileCurve& omega) {
  require_same_grid(alpha, beta);
  require_same_grid(alpha, omega);
  if (alpha.is_degenerate()) {
    throw DegenerateTransport("transport source distribution is a point mass");
  }
  // Constant geodesic: its parallel at omega is omega itself, whatever the clamp would do.
  if (alpha == beta) return omega;
  std::vector<double> v(omega.grid_size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = beta.quantile_at_index(alpha.cdf_index(omega[k]));
  }
  return QuantileCurve(std::move(v), QuantileCurve::Unchecked{});
}

QuantileCurve quantile_from_samples(std::span<const double> samples, std::size_t grid_size) {
  if (samples.size() < 2) {
    throw InvalidArgument("empirical quantiles need at least two samples, got " +
                          std::to_string(samples.size()));
  }
  if (grid_size == 0) throw InvalidArgument("grid size must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double x : sorted) {
    if (!std::isfinite(x)) throw InvalidArgument("samples must be finite");
  }
  std::sort(sorted.begin(), sorted.end());
  const double last = static_cast<double>(sorted.size() - 1);
  std::vector<double> v(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double h = last * QuantileCurve::grid_probability(k, grid_size);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    v[k] = sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  }
  return QuantileCurve::repaired(std::move(v));
}

}  // namespace geodid
