#include "geodid/frechet.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "geodid/numeric.hpp"

namespace geodid {

namespace {

using PointRefs = std::vector<const SpacePoint*>;

std::vector<double> normalized_weights(std::span<const double> weights, std::size_t count) {
  if (weights.empty()) return std::vector<double>(count, 1.0 / static_cast<double>(count));
  if (weights.size() != count) {
    throw InvalidArgument("got " + std::to_string(weights.size()) + " weights for " +
                          std::to_string(count) + " points");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("weights must be finite and nonnegative");
  }
  const double total = compensated_sum(weights);
  if (!(total > 0.0)) throw InvalidArgument("weights must have a positive sum");
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w /= total;
  return out;
}

double objective_at(const SpacePoint& mean, const PointRefs& pts, const std::vector<double>& w) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = distance(*pts[i], mean);
    acc.add(w[i] * d * d);
  }
  return acc.value();
}

QuantileCurve mean_curve(const PointRefs& pts, const std::vector<double>& w) {
  const std::size_t m = std::get<QuantileCurve>(*pts.front()).grid_size();
  std::vector<CompensatedSum> acc(m);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& q = std::get<QuantileCurve>(*pts[i]);
    if (q.grid_size() != m) throw GridMismatch("quantile grids differ within a Fréchet mean");
    for (std::size_t k = 0; k < m; ++k) acc[k].add(w[i] * q[k]);
  }
  std::vector<double> v(m);
  for (std::size_t k = 0; k < m; ++k) v[k] = acc[k].value();
  return QuantileCurve::repaired(std::move(v));
}

SymmetricMatrixPoint mean_matrix(const PointRefs& pts, const std::vector<double>& w) {
  const auto& first = std::get<SymmetricMatrixPoint>(*pts.front());
  const Eigen::Index m = first.size();
  MatrixKind kind = first.kind();
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(m * m));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& x = std::get<SymmetricMatrixPoint>(*pts[i]);
    if (x.size() != m) throw GridMismatch("matrix sizes differ within a Fréchet mean");
    if (x.kind() != kind) kind = MatrixKind::Free;
    for (Eigen::Index c = 0; c < m; ++c) {
      for (Eigen::Index r = 0; r < m; ++r) {
        acc[static_cast<std::size_t>(c * m + r)].add(w[i] * x.entries()(r, c));
      }
    }
  }
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < m; ++r) out(r, c) = acc[static_cast<std::size_t>(c * m + r)].value();
  }
  return SymmetricMatrixPoint::without_kind_check(std::move(out), kind);
}

FrechetResult mean_sphere(const PointRefs& pts, const std::vector<double>& w,
                          const FrechetOptions& options) {
  const auto& first = std::get<UnitCompositionPoint>(*pts.front());
  const std::size_t d = first.dimension();

  std::vector<double> extrinsic(d, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& x = std::get<UnitCompositionPoint>(*pts[i]);
    if (x.dimension() != d) throw GridMismatch("sphere dimensions differ within a Fréchet mean");
    for (std::size_t j = 0; j < d; ++j) extrinsic[j] += w[i] * x[j];
  }
  double norm = 0.0;
  for (double x : extrinsic) norm += x * x;
  norm = std::sqrt(norm);
  UnitCompositionPoint current = norm < 1e-8 ? first : UnitCompositionPoint::normalized(extrinsic);

  double step = 0.0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    std::vector<CompensatedSum> acc(d);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<double> log;
      try {
        log = sphere_log(current, std::get<UnitCompositionPoint>(*pts[i]));
      } catch (const NonConvergence&) {
        throw NonConvergence("sphere Fréchet mean: point " + std::to_string(i) +
                             " is antipodal to the iterate at iteration " + std::to_string(iter) +
                             "; tangent mean undefined");
      }
      for (std::size_t j = 0; j < d; ++j) acc[j].add(w[i] * log[j]);
    }
    std::vector<double> tangent(d);
    step = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      tangent[j] = acc[j].value();
      step += tangent[j] * tangent[j];
    }
    step = std::sqrt(step);
    if (step < options.tolerance) {
      FrechetResult r{current, 0.0, iter, true, step};
      r.objective = objective_at(r.mean, pts, w);
      return r;
    }
    current = sphere_exp(current, tangent);
  }
  throw NonConvergence("sphere Fréchet mean did not converge in " +
                       std::to_string(options.max_iterations) + " iterations (last step " +
                       std::to_string(step) + ")");
}

FrechetResult mean_of(const PointRefs& pts, std::span<const double> weights,
                      const FrechetOptions& options) {
  if (pts.empty()) throw InvalidArgument("Fréchet mean of an empty set");
  const SpaceId space = space_of(*pts.front());
  for (const auto* p : pts) {
    if (space_of(*p) != space) throw SpaceMismatch("Fréchet mean over points from different spaces");
  }
  const auto w = normalized_weights(weights, pts.size());

  if (space == SpaceId::Sphere) return mean_sphere(pts, w, options);

  FrechetResult r;
  if (space == SpaceId::Wasserstein) {
    r.mean = mean_curve(pts, w);
  } else {
    r.mean = mean_matrix(pts, w);
  }
  r.iterations = 1;
  r.converged = true;
  r.objective = objective_at(r.mean, pts, w);
  return r;
}

}  // namespace

FrechetResult frechet_mean(std::span<const SpacePoint> points, std::span<const double> weights,
                           const FrechetOptions& options) {
  PointRefs refs;
  refs.reserve(points.size());
  for (const auto& p : points) refs.push_back(&p);
  return mean_of(refs, weights, options);
}

FrechetResult group_means(const PanelDataset& panel, int period, const UnitSelector& select,
                          const FrechetOptions& options) {
  if (period < 0 || period > panel.last_period()) {
    throw InvalidArgument("period " + std::to_string(period) + " outside the panel");
  }
  PointRefs refs;
  for (std::size_t i = 0; i < panel.units(); ++i) {
    if (select(i)) refs.push_back(&panel.outcome(i, period));
  }
  if (refs.empty()) {
    throw EmptyGroup("no units selected at period " + std::to_string(period) +
                     " (overlap violated)");
  }
  return mean_of(refs, {}, options);
}

}  // namespace geodid
