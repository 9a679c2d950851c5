#pragma once

#include <cstddef>

#include "geodid/frechet.hpp"
#include "geodid/geometry.hpp"
#include "geodid/panel.hpp"

namespace geodid {

/// The four group-period Fréchet means nu_{d,t}.
struct GroupPeriodMeans {
  SpacePoint control_pre;
  SpacePoint control_post;
  SpacePoint treated_pre;
  SpacePoint treated_post;
};

/// Geodesic average treatment effect on the treated.
///
/// `effect` runs from the counterfactual treated post-period mean (the
/// control trend transported onto the treated pre-period mean) to the
/// observed treated post-period mean. `magnitude` is only the effect's
/// length; the geodesic itself carries direction.
struct GattEstimate {
  Geodesic effect;
  double magnitude = 0.0;
  GroupPeriodMeans means;
  SpacePoint counterfactual_start;
  std::size_t control_units = 0;
  std::size_t treated_units = 0;
  WarningLog warnings;
};

/// Two-period geodesic DID. The panel must have exactly two periods;
/// D_i = D_{i,1}. Throws EmptyGroup if either group is empty.
GattEstimate estimate_gatt(const PanelDataset& panel, const FrechetOptions& options = {});

/// Runs the estimator on two untreated periods `pre_a` < `pre_b`, with
/// units ever treated by the last period as the "treated" group. A small
/// magnitude is consistent with parallel trends.
GattEstimate placebo_pretrend(const PanelDataset& panel, int pre_a, int pre_b,
                              const FrechetOptions& options = {});

}  // namespace geodid
