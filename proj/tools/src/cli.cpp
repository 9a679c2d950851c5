#include "cli.hpp"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geodid/did.hpp"
#include "geodid/io.hpp"
#include "geodid/simulate.hpp"
#include "geodid/staggered.hpp"

namespace geodid::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kFullRuns = 500;

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InvalidArgument("cannot write " + path);
  file << text;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

// Invalid input (bad arguments, unreadable or inconsistent data) versus a
// failure of the estimator on valid data.
int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvariantViolation*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const MissingOutcome*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
      dynamic_cast<const SpaceMismatch*>(&e) || dynamic_cast<const GridMismatch*>(&e)) {
    return kExitInvalidInput;
  }
  return kExitEstimation;
}

struct SimulateArgs {
  std::string space = "network";
  std::vector<std::size_t> sizes{50, 200, 1000};
  std::optional<std::size_t> runs;
  bool full = false;
  std::uint64_t seed = 0;
  double treat_prob = 0.25;
  DgpParams dgp;
  std::size_t grid = kDefaultGridSize;
  std::string errors_csv;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic difference-in-differences on metric-space outcomes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "geodid 0.1.0");

  std::string manifest;
  std::string out_path;

  auto* estimate = app.add_subcommand("estimate", "Two-period GATT from a panel manifest");
  estimate->add_option("--manifest", manifest, "Panel manifest (JSON)")->required();
  estimate->add_option("--out", out_path, "Result JSON path (default: stdout)");

  std::vector<int> pre_periods;
  auto* placebo = app.add_subcommand("placebo", "Pre-trend placebo between two untreated periods");
  placebo->add_option("--manifest", manifest, "Panel manifest (JSON)")->required();
  placebo->add_option("--pre-periods", pre_periods, "Two untreated periods a,b with a < b")
      ->required()
      ->delimiter(',')
      ->expected(2);
  placebo->add_option("--out", out_path, "Result JSON path (default: stdout)");

  int delta = 0;
  std::string comparison = "never";
  bool force_recursive = false;
  auto* staggered = app.add_subcommand("staggered", "All admissible group-time cells");
  staggered->add_option("--manifest", manifest, "Panel manifest (JSON)")->required();
  staggered->add_option("--delta", delta, "Anticipation horizon")->check(CLI::NonNegativeNumber);
  staggered->add_option("--comparison", comparison, "Comparison cohort")
      ->check(CLI::IsMember({"never", "notyet"}));
  staggered->add_flag("--force-recursive", force_recursive,
                      "Use the recursive estimator even where the shortcut is valid");
  staggered->add_option("--out", out_path, "Result JSON path (default: stdout)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo convergence experiment");
  simulate->add_option("--space", sim.space, "Outcome space")
      ->check(CLI::IsMember({"wasserstein", "network"}));
  simulate->add_option("--n", sim.sizes, "Sample sizes, comma separated")->delimiter(',');
  simulate->add_option("--q", sim.runs, "Replications per sample size (default 200)");
  simulate->add_flag("--full", sim.full, "Use 500 replications unless --q is given");
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--treat-prob", sim.treat_prob, "P(D = 1)");
  simulate->add_option("--alpha1", sim.dgp.alpha1);
  simulate->add_option("--alpha2", sim.dgp.alpha2);
  simulate->add_option("--alpha3", sim.dgp.alpha3);
  simulate->add_option("--beta", sim.dgp.beta, "Treatment effect coefficient");
  simulate->add_option("--samples", sim.dgp.samples_per_dist, "Draws per distribution");
  simulate->add_option("--m1", sim.dgp.m1, "Block 1 size");
  simulate->add_option("--m2", sim.dgp.m2, "Block 2 size");
  simulate->add_option("--p11", sim.dgp.p11);
  simulate->add_option("--p12", sim.dgp.p12);
  simulate->add_option("--p21", sim.dgp.p21);
  simulate->add_option("--p22", sim.dgp.p22);
  simulate->add_option("--grid", sim.grid, "Quantile grid size");
  simulate->add_option("--out", out_path, "Result JSON path (default: stdout)");
  simulate->add_option("--errors-csv", sim.errors_csv, "Also write (n, run, seed, error) rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << render({{"error", {{"kind", "ArgumentError"}, {"message", e.what()}}}});
    return kExitInvalidInput;
  }

  try {
    if (estimate->parsed()) {
      const auto panel = io::load_panel(manifest);
      emit(render(io::gatt_to_json(estimate_gatt(panel))), out_path, out);
    } else if (placebo->parsed()) {
      const auto panel = io::load_panel(manifest);
      const auto est = placebo_pretrend(panel, pre_periods[0], pre_periods[1]);
      emit(render(io::placebo_to_json(est, pre_periods[0], pre_periods[1])), out_path, out);
    } else if (staggered->parsed()) {
      const auto panel = io::load_panel(manifest);
      const Comparison cmp = comparison == "never" ? Comparison::NeverTreated : Comparison::NotYetTreated;
      const auto cells = estimate_all_cells(panel, delta, cmp, force_recursive);
      emit(render(io::group_time_to_json(cells, panel.space(), delta, cmp)), out_path, out);
    } else if (simulate->parsed()) {
      SimConfig base;
      base.space = sim_space_from_string(sim.space);
      base.runs = sim.runs.value_or(sim.full ? kFullRuns : base.runs);
      base.seed = sim.seed;
      base.treat_prob = sim.treat_prob;
      base.dgp = sim.dgp;
      base.grid_size = sim.grid;
      const auto configs = configs_for_sizes(base, sim.sizes);
      for (const auto& c : configs) c.validate();
      const auto report = run_monte_carlo(configs);
      if (!sim.errors_csv.empty()) emit(io::errors_csv(report), sim.errors_csv, out);
      emit(render(io::sim_report_to_json(report, configs)), out_path, out);
    }
  } catch (const std::exception& e) {
    err << render(io::error_to_json(e));
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace geodid::cli
