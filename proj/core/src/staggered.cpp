#include "geodid/staggered.hpp"

#include <algorithm>
#include <set>

#include "geodid/parallel.hpp"

namespace geodid {

const char* to_string(Comparison c) {
  return c == Comparison::NeverTreated ? "never" : "notyet";
}

const char* to_string(EstimatorForm f) {
  return f == EstimatorForm::Recursive ? "recursive" : "shortcut";
}

std::optional<int> last_treated_group(const PanelDataset& panel) {
  int last = 0;
  for (std::size_t i = 0; i < panel.units(); ++i) {
    const auto g = panel.group(i);
    if (!g) return std::nullopt;
    last = std::max(last, *g);
  }
  return last;
}

std::vector<int> eligible_groups(const PanelDataset& panel, int delta) {
  const auto g_bar = last_treated_group(panel);
  const int T = panel.last_period();
  std::set<int> groups;
  for (std::size_t i = 0; i < panel.units(); ++i) {
    const auto g = panel.group(i);
    if (!g || (g_bar && *g == *g_bar)) continue;
    if (*g >= 1 + delta && *g <= T + delta) groups.insert(*g);
  }
  return {groups.begin(), groups.end()};
}

EstimatorForm default_form(SpaceId space, bool force_recursive) {
  if (force_recursive || !is_path_independent(space)) return EstimatorForm::Recursive;
  return EstimatorForm::Shortcut;
}

std::optional<std::string> admissibility_problem(const PanelDataset& panel,
                                                 const GroupTimeCell& cell) {
  const int T = panel.last_period();
  if (cell.delta < 0) return "anticipation horizon must be nonnegative";
  const auto groups = eligible_groups(panel, cell.delta);
  if (std::find(groups.begin(), groups.end(), cell.g) == groups.end()) {
    return "group " + std::to_string(cell.g) + " is not an eligible treatment group";
  }
  if (cell.t < 1 || cell.t > T - cell.delta) {
    return "period " + std::to_string(cell.t) + " outside 1..T-delta";
  }
  if (cell.t < cell.g - cell.delta) {
    return "period " + std::to_string(cell.t) +
           " precedes the anticipation window; the effect is zero by assumption";
  }
  if (cell.comparison == Comparison::NotYetTreated) {
    if (const auto g_bar = last_treated_group(panel); g_bar && cell.t >= *g_bar - cell.delta) {
      return "period " + std::to_string(cell.t) + " leaves no not-yet-treated units (last group " +
             std::to_string(*g_bar) + ")";
    }
  }
  return std::nullopt;
}

std::vector<GroupTimeCell> enumerate_cells(const PanelDataset& panel, int delta,
                                           Comparison comparison, bool force_recursive) {
  std::vector<GroupTimeCell> cells;
  if (delta < 0) return cells;
  const EstimatorForm form = default_form(panel.space(), force_recursive);
  for (int g : eligible_groups(panel, delta)) {
    for (int t = 1; t <= panel.last_period() - delta; ++t) {
      GroupTimeCell cell{g, t, delta, comparison, form};
      if (!admissibility_problem(panel, cell)) cells.push_back(cell);
    }
  }
  return cells;
}

GroupTimeGatt estimate_group_time_gatt(const PanelDataset& panel, const GroupTimeCell& cell,
                                       const FrechetOptions& options) {
  if (auto why = admissibility_problem(panel, cell)) {
    throw InadmissibleCell("cell (g=" + std::to_string(cell.g) + ", t=" + std::to_string(cell.t) +
                           "): " + *why);
  }
  if (cell.form == EstimatorForm::Shortcut && !is_path_independent(panel.space())) {
    throw InvalidArgument(std::string("shortcut estimator needs path-independent transport; the ") +
                          to_string(panel.space()) + " space requires the recursive form");
  }

  const int base = cell.g - cell.delta - 1;
  const UnitSelector in_group = [&](std::size_t i) { return panel.group(i) == cell.g; };
  // Cohort membership is fixed for the whole cell.
  const UnitSelector in_cohort = [&](std::size_t i) {
    if (cell.comparison == Comparison::NeverTreated) return panel.never_treated(i);
    return !panel.treated(i, cell.t + cell.delta) && panel.group(i) != cell.g;
  };

  GroupTimeGatt out{cell, Geodesic(panel.outcome(0, 0), panel.outcome(0, 0)), 0.0, {}, 0, 0, {}};
  for (std::size_t i = 0; i < panel.units(); ++i) {
    out.group_units += in_group(i) ? 1 : 0;
    out.comparison_units += in_cohort(i) ? 1 : 0;
  }
  if (out.comparison_units == 0) {
    throw EmptyCohort(base, "comparison cohort is empty at period " + std::to_string(base) +
                                " for cell (g=" + std::to_string(cell.g) +
                                ", t=" + std::to_string(cell.t) + ")");
  }

  auto cohort_mean = [&](int s) { return group_means(panel, s, in_cohort, options).mean; };

  SpacePoint beta = group_means(panel, base, in_group, options).mean;
  out.beta_path.push_back(beta);
  if (cell.form == EstimatorForm::Recursive) {
    SpacePoint previous = cohort_mean(base);
    for (int s = base + 1; s <= cell.t; ++s) {
      SpacePoint current = cohort_mean(s);
      beta = transport(previous, current, beta, &out.warnings);
      out.beta_path.push_back(beta);
      previous = std::move(current);
    }
  } else {
    beta = transport(cohort_mean(base), cohort_mean(cell.t), beta, &out.warnings);
    out.beta_path.push_back(beta);
  }

  out.effect = Geodesic(std::move(beta), group_means(panel, cell.t, in_group, options).mean);
  out.magnitude = distance(out.effect.start(), out.effect.end());
  return out;
}

std::vector<GroupTimeGatt> estimate_all_cells(const PanelDataset& panel, int delta,
                                              Comparison comparison, bool force_recursive,
                                              const FrechetOptions& options) {
  const auto cells = enumerate_cells(panel, delta, comparison, force_recursive);
  std::vector<std::optional<GroupTimeGatt>> results(cells.size());
  parallel_for(cells.size(), [&](std::size_t k) {
    results[k] = estimate_group_time_gatt(panel, cells[k], options);
  });
  std::vector<GroupTimeGatt> out;
  out.reserve(results.size());
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace geodid
