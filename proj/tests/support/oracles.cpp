#include "oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <numbers>

#include "geodid/numeric.hpp"

namespace geodid::testing {

double bisection_normal_quantile(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(-mid / std::numbers::sqrt2) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> gaussian_quantiles_oracle(double mean, double sd, std::size_t grid_size) {
  std::vector<double> q(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    q[k] = mean + sd * bisection_normal_quantile((static_cast<double>(k) + 0.5) / grid_size);
  }
  return q;
}

double sup_norm_interior(std::span<const double> a, std::span<const double> b, std::size_t trim) {
  double worst = 0.0;
  for (std::size_t k = trim; k + trim < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

QuantileCurve random_curve(Rng& rng, std::size_t grid_size) {
  // Location-scale Gaussian plus a random increasing perturbation, so curves
  // are not all in one two-parameter family.
  const double mu = uniform(rng, -2.0, 2.0);
  const double sd = uniform(rng, 0.3, 2.5);
  std::vector<double> q(grid_size);
  double bump = 0.0;
  for (std::size_t k = 0; k < grid_size; ++k) {
    bump += uniform(rng, 0.0, 0.05);
    q[k] = mu + sd * normal_quantile(QuantileCurve::grid_probability(k, grid_size)) + bump;
  }
  return QuantileCurve(std::move(q));
}

UnitCompositionPoint random_orthant_point(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (auto& x : v) x = uniform(rng, 0.05, 1.0);
  return UnitCompositionPoint::normalized(std::move(v));
}

SymmetricMatrixPoint random_symmetric(Rng& rng, Eigen::Index m) {
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) a(i, j) = a(j, i) = uniform(rng, -3.0, 3.0);
  }
  return SymmetricMatrixPoint(std::move(a), MatrixKind::Free);
}

SpacePoint random_point(Rng& rng, SpaceId space) {
  switch (space) {
    case SpaceId::Wasserstein:
      return random_curve(rng);
    case SpaceId::Sphere:
      return random_orthant_point(rng);
    case SpaceId::Frobenius:
      return random_symmetric(rng);
  }
  return random_curve(rng);
}

PanelDataset random_two_period_panel(Rng& rng, SpaceId space, std::size_t units) {
  std::vector<SpacePoint> pre, post;
  std::vector<std::uint8_t> d(units);
  for (std::size_t i = 0; i < units; ++i) {
    pre.push_back(random_point(rng, space));
    post.push_back(random_point(rng, space));
    d[i] = i == 0 ? 0 : i == 1 ? 1 : static_cast<std::uint8_t>(rng() & 1);
  }
  return PanelDataset::two_period(std::move(pre), std::move(post), d);
}

PanelDataset random_staggered_panel(Rng& rng, SpaceId space, std::size_t units, int last_period) {
  std::vector<std::string> ids;
  std::vector<std::vector<SpacePoint>> outcomes;
  std::vector<std::vector<std::uint8_t>> treatment;
  const int choices = last_period + 1;  // groups 1..T plus never
  for (std::size_t i = 0; i < units; ++i) {
    int g = static_cast<int>(i % static_cast<std::size_t>(choices)) + 1;
    if (i >= static_cast<std::size_t>(2 * choices)) g = static_cast<int>(rng() % choices) + 1;
    // g == T + 1 encodes never treated
    ids.push_back("u" + std::to_string(i));
    std::vector<SpacePoint> row;
    std::vector<std::uint8_t> d;
    for (int t = 0; t <= last_period; ++t) {
      row.push_back(random_point(rng, space));
      d.push_back(t >= g ? 1 : 0);
    }
    outcomes.push_back(std::move(row));
    treatment.push_back(std::move(d));
  }
  return PanelDataset(std::move(ids), std::move(outcomes), std::move(treatment));
}

double max_abs_diff(const SpacePoint& a, const SpacePoint& b) {
  if (const auto* q = std::get_if<QuantileCurve>(&a)) {
    return sup_norm_interior(q->values(), std::get<QuantileCurve>(b).values(), 0);
  }
  if (const auto* z = std::get_if<UnitCompositionPoint>(&a)) {
    return sup_norm_interior(z->coords(), std::get<UnitCompositionPoint>(b).coords(), 0);
  }
  return (std::get<SymmetricMatrixPoint>(a).entries() - std::get<SymmetricMatrixPoint>(b).entries())
      .cwiseAbs()
      .maxCoeff();
}

std::filesystem::path fresh_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("geodid_" + tag + "_" + std::to_string(std::random_device{}()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<double, double> hand_ols(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {(sy - b * sx) / n, b};
}

}  // namespace geodid::testing
