#include "geodid/panel.hpp"

namespace geodid {

namespace {

// Grid size, sphere dimension, or matrix order.
std::size_t shape_of(const SpacePoint& p) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using P = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<P, QuantileCurve>) {
          return x.grid_size();
        } else if constexpr (std::is_same_v<P, UnitCompositionPoint>) {
          return x.dimension();
        } else {
          return static_cast<std::size_t>(x.size());
        }
      },
      p);
}

}  // namespace

PanelDataset::PanelDataset(std::vector<std::string> unit_ids,
                           std::vector<std::vector<SpacePoint>> outcomes,
                           std::vector<std::vector<std::uint8_t>> treatment)
    : unit_ids_(std::move(unit_ids)), outcomes_(std::move(outcomes)), treatment_(std::move(treatment)) {
  if (outcomes_.empty()) throw InvariantViolation("panel.nonempty", "panel has no units");
  if (unit_ids_.size() != outcomes_.size() || treatment_.size() != outcomes_.size()) {
    throw InvariantViolation("panel.shape", "unit ids, outcomes and treatment disagree on unit count");
  }
  const std::size_t periods = outcomes_.front().size();
  if (periods < 2) throw InvariantViolation("panel.periods", "panel needs at least two periods");
  const SpaceId space = space_of(outcomes_.front().front());
  const std::size_t shape = shape_of(outcomes_.front().front());

  groups_.resize(outcomes_.size());
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    const std::string& id = unit_ids_[i];
    if (outcomes_[i].size() != periods) {
      throw InvariantViolation("panel.missing_outcome", "unit has " +
                                   std::to_string(outcomes_[i].size()) + " outcomes, expected " +
                                   std::to_string(periods),
                               id);
    }
    if (treatment_[i].size() != periods) {
      throw InvariantViolation("panel.treatment_shape", "treatment row has wrong length", id);
    }
    for (std::size_t t = 0; t < periods; ++t) {
      const int period = static_cast<int>(t);
      if (space_of(outcomes_[i][t]) != space) {
        throw InvariantViolation("panel.single_space", "outcome lives in a different space", id,
                                 period);
      }
      if (shape_of(outcomes_[i][t]) != shape) {
        throw InvariantViolation("panel.shape", "outcome grid/dimension differs from the panel's",
                                 id, period);
      }
      const auto d = treatment_[i][t];
      if (d > 1) throw InvariantViolation("treatment.binary", "treatment must be 0 or 1", id, period);
      if (t == 0 && d != 0) {
        throw InvariantViolation("treatment.untreated_at_start", "D_{i,0} must be 0", id, period);
      }
      if (t > 0 && treatment_[i][t - 1] == 1 && d == 0) {
        throw InvariantViolation("treatment.irreversible", "treatment switched off", id, period);
      }
      if (d == 1 && !groups_[i]) groups_[i] = period;
    }
  }
}

PanelDataset PanelDataset::two_period(std::vector<SpacePoint> pre, std::vector<SpacePoint> post,
                                      const std::vector<std::uint8_t>& treated) {
  if (pre.size() != post.size() || pre.size() != treated.size()) {
    throw InvariantViolation("panel.shape", "two-period inputs disagree on unit count");
  }
  std::vector<std::string> ids(pre.size());
  std::vector<std::vector<SpacePoint>> outcomes(pre.size());
  std::vector<std::vector<std::uint8_t>> treatment(pre.size());
  for (std::size_t i = 0; i < pre.size(); ++i) {
    ids[i] = std::to_string(i);
    outcomes[i] = {std::move(pre[i]), std::move(post[i])};
    treatment[i] = {0, treated[i]};
  }
  return PanelDataset(std::move(ids), std::move(outcomes), std::move(treatment));
}

}  // namespace geodid
