#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geodid/frechet.hpp"
#include "geodid/geometry.hpp"
#include "geodid/panel.hpp"

namespace geodid {

enum class Comparison { NeverTreated, NotYetTreated };
enum class EstimatorForm { Recursive, Shortcut };

const char* to_string(Comparison c);
const char* to_string(EstimatorForm f);

/// A (group, period) pair for the cohort first treated at g, evaluated at t
/// with anticipation horizon delta.
struct GroupTimeCell {
  int g = 1;
  int t = 1;
  int delta = 0;
  Comparison comparison = Comparison::NeverTreated;
  EstimatorForm form = EstimatorForm::Recursive;

  friend bool operator==(const GroupTimeCell&, const GroupTimeCell&) = default;
};

struct GroupTimeGatt {
  GroupTimeCell cell;
  /// From the transported baseline beta_t to the group's mean at t.
  Geodesic effect;
  double magnitude = 0.0;
  /// beta_{g-delta-1}, ..., beta_t for the recursive form; the two
  /// endpoints for the shortcut form.
  std::vector<SpacePoint> beta_path;
  std::size_t group_units = 0;
  std::size_t comparison_units = 0;
  WarningLog warnings;
};

/// Largest first-treatment period when every unit is eventually treated,
/// nullopt (infinity) when some unit is never treated.
std::optional<int> last_treated_group(const PanelDataset& panel);

/// Treatment groups usable as targets: observed first-treatment periods,
/// minus the last-treated group, within {1+delta, ..., T+delta}.
std::vector<int> eligible_groups(const PanelDataset& panel, int delta);

/// Shortcut on path-independent spaces unless recursion is forced.
EstimatorForm default_form(SpaceId space, bool force_recursive = false);

/// Explanation of why the cell is inadmissible, or nullopt if it is fine.
std::optional<std::string> admissibility_problem(const PanelDataset& panel,
                                                 const GroupTimeCell& cell);

/// All admissible cells for one comparison scheme, ordered by (g, t).
std::vector<GroupTimeCell> enumerate_cells(const PanelDataset& panel, int delta,
                                           Comparison comparison, bool force_recursive = false);

/// Group-time GATT for one cell. Throws InadmissibleCell, EmptyCohort (with
/// the offending period), or InvalidArgument when the shortcut form is
/// requested on a path-dependent space.
GroupTimeGatt estimate_group_time_gatt(const PanelDataset& panel, const GroupTimeCell& cell,
                                       const FrechetOptions& options = {});

/// Every admissible cell, estimated in parallel.
std::vector<GroupTimeGatt> estimate_all_cells(const PanelDataset& panel, int delta,
                                              Comparison comparison, bool force_recursive = false,
                                              const FrechetOptions& options = {});

}  // namespace geodid
