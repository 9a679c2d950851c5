#include "geodid/did.hpp"

#include <string>

namespace geodid {

namespace {

GattEstimate estimate_between(const PanelDataset& panel, int pre, int post,
                              const UnitSelector& is_treated, const FrechetOptions& options) {
  const UnitSelector is_control = [&](std::size_t i) { return !is_treated(i); };

  std::size_t treated_units = 0;
  for (std::size_t i = 0; i < panel.units(); ++i) treated_units += is_treated(i) ? 1 : 0;

  GroupPeriodMeans means{
      group_means(panel, pre, is_control, options).mean,
      group_means(panel, post, is_control, options).mean,
      group_means(panel, pre, is_treated, options).mean,
      group_means(panel, post, is_treated, options).mean,
  };

  WarningLog warnings;
  SpacePoint counterfactual =
      transport(means.control_pre, means.control_post, means.treated_pre, &warnings);
  Geodesic effect(counterfactual, means.treated_post);
  const double magnitude = distance(effect.start(), effect.end());
  return GattEstimate{std::move(effect),  magnitude,
                      std::move(means),   std::move(counterfactual),
                      panel.units() - treated_units, treated_units,
                      std::move(warnings)};
}

}  // namespace

GattEstimate estimate_gatt(const PanelDataset& panel, const FrechetOptions& options) {
  if (panel.periods() != 2) {
    throw InvalidArgument("estimate_gatt needs a two-period panel, got " +
                          std::to_string(panel.periods()) + " periods");
  }
  return estimate_between(
      panel, 0, 1, [&](std::size_t i) { return panel.treated(i, 1); }, options);
}

GattEstimate placebo_pretrend(const PanelDataset& panel, int pre_a, int pre_b,
                              const FrechetOptions& options) {
  if (!(0 <= pre_a && pre_a < pre_b && pre_b <= panel.last_period())) {
    throw InvalidArgument("placebo periods must satisfy 0 <= a < b <= T");
  }
  for (std::size_t i = 0; i < panel.units(); ++i) {
    if (panel.treated(i, pre_b)) {
      throw InvariantViolation("placebo.untreated_periods",
                               "placebo periods must be untreated for every unit",
                               panel.unit_id(i), pre_b);
    }
  }
  const int last = panel.last_period();
  return estimate_between(
      panel, pre_a, pre_b, [&](std::size_t i) { return panel.treated(i, last); }, options);
}

}  // namespace geodid
