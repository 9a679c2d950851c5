#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geodid/geometry.hpp"
#include "geodid/panel.hpp"

namespace geodid {

enum class SimSpace { Wasserstein, Network };

const char* to_string(SimSpace s);
SimSpace sim_space_from_string(const std::string& name);

/// Data-generating parameters. Distribution outcomes use alpha1, alpha2 and
/// beta; network outcomes use all four coefficients plus the two-block SBM.
struct DgpParams {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double alpha3 = 1.0;
  double beta = 1.0;
  std::size_t samples_per_dist = 100;
  std::size_t m1 = 5;
  std::size_t m2 = 5;
  double p11 = 0.5;
  double p12 = 0.2;
  double p21 = 0.2;
  double p22 = 0.5;
};

struct SimConfig {
  SimSpace space = SimSpace::Network;
  std::size_t n = 50;
  std::size_t runs = 200;
  double treat_prob = 0.25;
  std::uint64_t seed = 0;
  DgpParams dgp;
  std::size_t grid_size = 100;

  /// Throws InvalidArgument on out-of-range parameters.
  void validate() const;
};

struct SimulatedPanel {
  PanelDataset panel;
  /// Population GATT: from the transported counterfactual to nu_{1,1}.
  Geodesic true_gatt;
};

/// Gaussian-quantile distributions: mu_{i,t} ~ N(alpha2 t, 1),
/// sigma_{i,t} = alpha1 + beta D_i t, each outcome observed through
/// `samples_per_dist` draws turned into empirical quantiles.
SimulatedPanel generate_wasserstein_panel(const SimConfig& config);

/// Population curves of the distribution DGP, exact on the grid:
/// {control_pre, control_post, treated_pre, treated_post}.
std::vector<QuantileCurve> wasserstein_population_means(const SimConfig& config);
Geodesic true_wasserstein_gatt(const SimConfig& config);

/// Weighted two-block SBM: edges present with probability p_{ll'}, weight
/// alpha1 + alpha2 t + alpha3 D_i + beta D_i t + eps, eps ~ U[-1, 1] drawn
/// per edge; outcome is the graph Laplacian.
SimulatedPanel generate_network_panel(const SimConfig& config);

/// Population SBM Laplacian nu_{d,t}.
SymmetricMatrixPoint network_population_mean(const SimConfig& config, int treated, int period);
Geodesic true_network_gatt(const SimConfig& config);

/// Three-period distribution panel for parallel-trend diagnostics: periods
/// 0 and 1 both follow the t = 0 law with the unit's location held fixed
/// and fresh within-distribution draws; period 2 is the treated t = 1 law.
PanelDataset generate_wasserstein_placebo_panel(const SimConfig& config);

SimulatedPanel generate_panel(const SimConfig& config);

struct RunRecord {
  std::size_t n = 0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double error = 0.0;
  bool ok = true;
  std::string failure;
};

struct SizeSummary {
  std::size_t n = 0;
  std::size_t completed = 0;
  std::size_t failed = 0;
  double mean_error = 0.0;
  double median_error = 0.0;
};

struct RegressionLine {
  double slope = 0.0;
  double intercept = 0.0;
};

struct SimReport {
  SimSpace space = SimSpace::Network;
  std::vector<RunRecord> runs;
  std::vector<SizeSummary> sizes;
  /// OLS of log(mean error) on log n; present with >= 2 distinct sizes.
  std::optional<RegressionLine> fit;
};

/// One config per sample size, sharing space, seed and DGP.
std::vector<SimConfig> configs_for_sizes(const SimConfig& base, std::span<const std::size_t> sizes);

/// Runs every config's Monte Carlo replications in parallel. Run k (counted
/// across all configs in order) uses mix_seed(seed) ^ k. Each run's error is
/// d_G(estimate, truth) with the true counterfactual as reference; runs
/// that throw are recorded as failed and excluded from the summaries.
SimReport run_monte_carlo(std::span<const SimConfig> configs, std::size_t workers = 0);

/// Ordinary least squares y = intercept + slope x. Throws InvalidArgument
/// with fewer than two distinct x.
RegressionLine slope_regression(std::span<const std::pair<double, double>> points);

}  // namespace geodid
