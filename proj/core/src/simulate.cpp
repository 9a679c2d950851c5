#include "geodid/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "geodid/did.hpp"
#include "geodid/numeric.hpp"
#include "geodid/parallel.hpp"

namespace geodid {

namespace {

using Engine = std::mt19937_64;

Engine make_engine(std::uint64_t seed) { return Engine(mix_seed(seed)); }

double standard_normal(Engine& rng) { return normal_quantile(uniform_open01(rng)); }

bool bernoulli(Engine& rng, double p) { return uniform_open01(rng) < p; }

std::size_t block_of(const DgpParams& dgp, std::size_t node) { return node < dgp.m1 ? 0 : 1; }

double edge_probability(const DgpParams& dgp, std::size_t j, std::size_t k) {
  const std::size_t a = block_of(dgp, j);
  const std::size_t b = block_of(dgp, k);
  if (a == 0 && b == 0) return dgp.p11;
  if (a == 1 && b == 1) return dgp.p22;
  return a == 0 ? dgp.p12 : dgp.p21;
}

SymmetricMatrixPoint laplacian_of(const Eigen::MatrixXd& weights) {
  Eigen::MatrixXd lap = -weights;
  lap.diagonal() = weights.rowwise().sum();
  // Weights can be negative for extreme coefficients; the kind is then only
  // nominal and transport reports it.
  return SymmetricMatrixPoint::without_kind_check(std::move(lap), MatrixKind::Laplacian);
}

std::vector<double> draw_gaussian(Engine& rng, double mean, double sd, std::size_t count) {
  std::vector<double> xs(count);
  for (double& x : xs) x = mean + sd * standard_normal(rng);
  return xs;
}

}  // namespace

const char* to_string(SimSpace s) { return s == SimSpace::Wasserstein ? "wasserstein" : "network"; }

SimSpace sim_space_from_string(const std::string& name) {
  if (name == "wasserstein") return SimSpace::Wasserstein;
  if (name == "network") return SimSpace::Network;
  throw InvalidArgument("unknown simulation space '" + name + "' (expected wasserstein or network)");
}

void SimConfig::validate() const {
  if (!(treat_prob > 0.0 && treat_prob < 1.0)) throw InvalidArgument("treat_prob must lie in (0, 1)");
  if (n < 4) throw InvalidArgument("n must be at least 4");
  if (runs < 1) throw InvalidArgument("need at least one Monte Carlo run");
  if (space == SimSpace::Wasserstein) {
    if (grid_size < 1) throw InvalidArgument("grid size must be positive");
    if (dgp.samples_per_dist < 2) throw InvalidArgument("need at least two samples per distribution");
    if (!(dgp.alpha1 > 0.0)) throw InvalidArgument("alpha1 (baseline scale) must be positive");
    if (!(dgp.alpha1 + dgp.beta > 0.0)) throw InvalidArgument("alpha1 + beta must be positive");
  } else {
    if (dgp.m1 + dgp.m2 < 2) throw InvalidArgument("network needs at least two nodes");
    for (double p : {dgp.p11, dgp.p12, dgp.p21, dgp.p22}) {
      if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probabilities must lie in [0, 1]");
    }
    if (dgp.p12 != dgp.p21) {
      throw InvalidArgument("undirected SBM needs p12 == p21");
    }
  }
}

std::vector<QuantileCurve> wasserstein_population_means(const SimConfig& config) {
  const auto& d = config.dgp;
  const std::size_t m = config.grid_size;
  return {QuantileCurve::gaussian(0.0, d.alpha1, m), QuantileCurve::gaussian(d.alpha2, d.alpha1, m),
          QuantileCurve::gaussian(0.0, d.alpha1, m),
          QuantileCurve::gaussian(d.alpha2, d.alpha1 + d.beta, m)};
}

Geodesic true_wasserstein_gatt(const SimConfig& config) {
  const auto& d = config.dgp;
  // Location-scale composition F_{01}^{-1} o F_{00} o F_{10}^{-1}:
  // mean m01 + s01 (m10 - m00) / s00, scale s01 s10 / s00, all closed form.
  const double m00 = 0.0, s00 = d.alpha1;
  const double m01 = d.alpha2, s01 = d.alpha1;
  const double m10 = 0.0, s10 = d.alpha1;
  const double start_mean = m01 + s01 * (m10 - m00) / s00;
  const double start_sd = s01 * s10 / s00;
  return Geodesic(QuantileCurve::gaussian(start_mean, start_sd, config.grid_size),
                  QuantileCurve::gaussian(d.alpha2, d.alpha1 + d.beta, config.grid_size));
}

SimulatedPanel generate_wasserstein_panel(const SimConfig& config) {
  config.validate();
  const auto& d = config.dgp;
  Engine rng = make_engine(config.seed);
  std::vector<SpacePoint> pre(config.n), post(config.n);
  std::vector<std::uint8_t> treated(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    treated[i] = bernoulli(rng, config.treat_prob) ? 1 : 0;
    for (int t = 0; t < 2; ++t) {
      const double mu = d.alpha2 * t + standard_normal(rng);
      const double sigma = d.alpha1 + d.beta * treated[i] * t;
      const auto xs = draw_gaussian(rng, mu, sigma, d.samples_per_dist);
      (t == 0 ? pre : post)[i] = quantile_from_samples(xs, config.grid_size);
    }
  }
  return {PanelDataset::two_period(std::move(pre), std::move(post), treated),
          true_wasserstein_gatt(config)};
}

PanelDataset generate_wasserstein_placebo_panel(const SimConfig& config) {
  config.validate();
  const auto& d = config.dgp;
  Engine rng = make_engine(config.seed);
  std::vector<std::string> ids(config.n);
  std::vector<std::vector<SpacePoint>> outcomes(config.n);
  std::vector<std::vector<std::uint8_t>> treatment(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    ids[i] = std::to_string(i);
    const std::uint8_t D = bernoulli(rng, config.treat_prob) ? 1 : 0;
    const double mu0 = standard_normal(rng);
    for (int rep = 0; rep < 2; ++rep) {
      outcomes[i].push_back(
          quantile_from_samples(draw_gaussian(rng, mu0, d.alpha1, d.samples_per_dist), config.grid_size));
    }
    const double mu1 = d.alpha2 + standard_normal(rng);
    outcomes[i].push_back(quantile_from_samples(
        draw_gaussian(rng, mu1, d.alpha1 + d.beta * D, d.samples_per_dist), config.grid_size));
    treatment[i] = {0, 0, D};
  }
  return PanelDataset(std::move(ids), std::move(outcomes), std::move(treatment));
}

SymmetricMatrixPoint network_population_mean(const SimConfig& config, int treated, int period) {
  const auto& d = config.dgp;
  const auto m = static_cast<Eigen::Index>(d.m1 + d.m2);
  const double weight =
      d.alpha1 + d.alpha2 * period + treated * (d.alpha3 + d.beta * period);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      if (j != k) {
        w(j, k) = edge_probability(d, static_cast<std::size_t>(j), static_cast<std::size_t>(k)) * weight;
      }
    }
  }
  return laplacian_of(w);
}

Geodesic true_network_gatt(const SimConfig& config) {
  const auto nu00 = network_population_mean(config, 0, 0);
  const auto nu01 = network_population_mean(config, 0, 1);
  const auto nu10 = network_population_mean(config, 1, 0);
  const auto nu11 = network_population_mean(config, 1, 1);
  return Geodesic(matrix_transport(nu00, nu01, nu10), nu11);
}

SimulatedPanel generate_network_panel(const SimConfig& config) {
  config.validate();
  const auto& d = config.dgp;
  const std::size_t m = d.m1 + d.m2;
  Engine rng = make_engine(config.seed);
  std::vector<SpacePoint> pre(config.n), post(config.n);
  std::vector<std::uint8_t> treated(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    treated[i] = bernoulli(rng, config.treat_prob) ? 1 : 0;
    const double D = treated[i];
    for (int t = 0; t < 2; ++t) {
      const double base = d.alpha1 + d.alpha2 * t + d.alpha3 * D + d.beta * D * t;
      Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
          if (!bernoulli(rng, edge_probability(d, j, k))) continue;
          const double eps = 2.0 * uniform_open01(rng) - 1.0;
          const auto jj = static_cast<Eigen::Index>(j);
          const auto kk = static_cast<Eigen::Index>(k);
          w(jj, kk) = w(kk, jj) = base + eps;
        }
      }
      (t == 0 ? pre : post)[i] = laplacian_of(w);
    }
  }
  return {PanelDataset::two_period(std::move(pre), std::move(post), treated), true_network_gatt(config)};
}

SimulatedPanel generate_panel(const SimConfig& config) {
  return config.space == SimSpace::Wasserstein ? generate_wasserstein_panel(config)
                                               : generate_network_panel(config);
}

std::vector<SimConfig> configs_for_sizes(const SimConfig& base, std::span<const std::size_t> sizes) {
  std::vector<SimConfig> out;
  for (std::size_t n : sizes) {
    SimConfig c = base;
    c.n = n;
    out.push_back(c);
  }
  return out;
}

SimReport run_monte_carlo(std::span<const SimConfig> configs, std::size_t workers) {
  if (configs.empty()) throw InvalidArgument("run_monte_carlo needs at least one config");
  for (const auto& c : configs) {
    c.validate();
    if (c.space != configs.front().space) throw InvalidArgument("configs must share one space");
  }

  SimReport report;
  report.space = configs.front().space;
  // Scramble the base seed before xoring in the run index; a raw xor would
  // only permute run seeds within aligned blocks for small base seeds.
  std::vector<std::size_t> owner;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t q = 0; q < configs[c].runs; ++q) {
      RunRecord r;
      r.n = configs[c].n;
      r.run = q;
      r.seed = mix_seed(configs[c].seed) ^ static_cast<std::uint64_t>(report.runs.size());
      report.runs.push_back(r);
      owner.push_back(c);
    }
  }

  parallel_for(
      report.runs.size(),
      [&](std::size_t k) {
        RunRecord& rec = report.runs[k];
        SimConfig cfg = configs[owner[k]];
        cfg.seed = rec.seed;
        try {
          const auto sim = generate_panel(cfg);
          const auto est = estimate_gatt(sim.panel);
          rec.error = quotient_distance(est.effect, sim.true_gatt, sim.true_gatt.start());
          if (!std::isfinite(rec.error)) throw NonConvergence("non-finite estimation error");
        } catch (const Error& e) {
          rec.ok = false;
          rec.error = 0.0;
          rec.failure = e.kind() + ": " + e.what();
        }
      },
      workers);

  std::vector<std::pair<double, double>> log_points;
  for (const auto& c : configs) {
    if (std::any_of(report.sizes.begin(), report.sizes.end(),
                    [&](const SizeSummary& s) { return s.n == c.n; })) {
      continue;
    }
    SizeSummary s;
    s.n = c.n;
    std::vector<double> errs;
    for (const auto& r : report.runs) {
      if (r.n != c.n) continue;
      if (r.ok) {
        errs.push_back(r.error);
      } else {
        ++s.failed;
      }
    }
    std::sort(errs.begin(), errs.end());
    s.completed = errs.size();
    if (!errs.empty()) {
      s.mean_error = compensated_sum(errs) / static_cast<double>(errs.size());
      const std::size_t h = errs.size() / 2;
      s.median_error = errs.size() % 2 ? errs[h] : 0.5 * (errs[h - 1] + errs[h]);
      if (s.mean_error > 0.0) {
        log_points.emplace_back(std::log(static_cast<double>(s.n)), std::log(s.mean_error));
      }
    }
    report.sizes.push_back(s);
  }
  if (log_points.size() >= 2) report.fit = slope_regression(log_points);
  return report;
}

RegressionLine slope_regression(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw InvalidArgument("slope regression needs at least two points");
  const double count = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("slope regression needs at least two distinct sample sizes");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace geodid
