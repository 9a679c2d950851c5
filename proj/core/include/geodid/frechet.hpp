#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "geodid/geometry.hpp"
#include "geodid/panel.hpp"

namespace geodid {

struct FrechetResult {
  SpacePoint mean;
  /// Weighted mean squared distance from the points to `mean`.
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Norm of the final tangent-space step (0 for closed forms).
  double last_step = 0.0;
};

/// Controls the iterative sphere mean only.
struct FrechetOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
};

/// Weighted empirical Fréchet mean.
///
/// Wasserstein and Frobenius use the closed-form weighted entrywise mean
/// (compensated sums). The sphere iterates w <- Exp_w(mean Log_w(x_i)) from
/// the normalized extrinsic mean until the tangent mean is below tolerance;
/// it throws NonConvergence when the log map is undefined or the iteration
/// budget runs out. An empty `weights` means equal weights.
FrechetResult frechet_mean(std::span<const SpacePoint> points, std::span<const double> weights = {},
                           const FrechetOptions& options = {});

using UnitSelector = std::function<bool(std::size_t unit)>;

/// Fréchet mean of the selected units' outcomes at `period`. Throws
/// EmptyGroup when nothing is selected.
FrechetResult group_means(const PanelDataset& panel, int period, const UnitSelector& select,
                          const FrechetOptions& options = {});

}  // namespace geodid
