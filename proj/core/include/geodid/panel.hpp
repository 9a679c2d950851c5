#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geodid/geometry.hpp"

namespace geodid {

/// Per-unit outcome sequences over periods 0..T with treatment indicators.
///
/// Treatment is irreversible and starts untreated (D_{i,0} = 0). Every
/// outcome lives in one space with one grid size / dimension / matrix size.
/// Violations throw InvariantViolation naming unit, period and rule.
class PanelDataset {
 public:
  PanelDataset(std::vector<std::string> unit_ids, std::vector<std::vector<SpacePoint>> outcomes,
               std::vector<std::vector<std::uint8_t>> treatment);

  /// Two periods, D_{i,1} = treated[i]; unit ids are "0", "1", ...
  static PanelDataset two_period(std::vector<SpacePoint> pre, std::vector<SpacePoint> post,
                                 const std::vector<std::uint8_t>& treated);

  std::size_t units() const noexcept { return outcomes_.size(); }
  std::size_t periods() const noexcept { return outcomes_.front().size(); }
  /// Largest period index T.
  int last_period() const noexcept { return static_cast<int>(periods()) - 1; }
  SpaceId space() const noexcept { return space_of(outcomes_.front().front()); }

  const std::string& unit_id(std::size_t i) const { return unit_ids_[i]; }
  const SpacePoint& outcome(std::size_t i, int t) const {
    return outcomes_[i][static_cast<std::size_t>(t)];
  }
  bool treated(std::size_t i, int t) const { return treatment_[i][static_cast<std::size_t>(t)] != 0; }

  /// First treated period G_i, or nullopt for never-treated units.
  std::optional<int> group(std::size_t i) const { return groups_[i]; }
  bool never_treated(std::size_t i) const { return !groups_[i].has_value(); }

  const std::vector<std::vector<std::uint8_t>>& treatment() const noexcept { return treatment_; }

 private:
  std::vector<std::string> unit_ids_;
  std::vector<std::vector<SpacePoint>> outcomes_;
  std::vector<std::vector<std::uint8_t>> treatment_;
  std::vector<std::optional<int>> groups_;
};

}  // namespace geodid
