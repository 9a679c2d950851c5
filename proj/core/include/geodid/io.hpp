#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geodid/did.hpp"
#include "geodid/error.hpp"
#include "geodid/geometry.hpp"
#include "geodid/panel.hpp"
#include "geodid/simulate.hpp"
#include "geodid/staggered.hpp"

namespace geodid::io {

inline constexpr int kSchemaVersion = 1;

enum class PanelFormat { SamplesCsv, QuantileCsv, CompositionCsv, MatrixCsv, MatrixJson };

const char* to_string(PanelFormat f);
PanelFormat panel_format_from_string(const std::string& name);

/// Reads a panel manifest (JSON) and the per-cell data files it points to.
///
/// Manifest layout:
///
///     {
///       "space": "wasserstein" | "sphere" | "frobenius",
///       "format": "samples-csv" | "quantile-csv" | "composition-csv"
///                 | "matrix-csv" | "matrix-json",
///       "periods": 2,
///       "grid_size": 100,            // samples-csv only
///       "matrix_kind": "laplacian",  // matrix formats; default "free"
///       "units": [
///         {"id": "a", "treatment": [0, 1], "outcomes": ["a0.csv", "a1.csv"]},
///         {"id": "b", "group": null,   "outcomes": [[0.1, 0.9], [0.2, 0.8]]}
///       ]
///     }
///
/// Outcomes are file paths relative to the manifest or inline rows (matrix
/// formats take an array of rows, or a bare number for 1 x 1). "group" is
/// the first treated period (null for never treated) and is an alternative
/// to "treatment".
///
/// Throws ParseError (file, line, column), InvariantViolation (rule, unit,
/// period) or MissingOutcome.
PanelDataset load_panel(const std::filesystem::path& manifest);

/// Writes `manifest` plus one data file per cell next to it. samples-csv is
/// input-only and rejected here.
void save_panel(const PanelDataset& panel, const std::filesystem::path& manifest,
                PanelFormat format);

/// Rows of comma/whitespace-separated reals; blank lines skipped.
std::vector<std::vector<double>> read_csv(const std::filesystem::path& file);

nlohmann::json point_to_json(const SpacePoint& point);
SpacePoint point_from_json(const nlohmann::json& payload, SpaceId space);

nlohmann::json gatt_to_json(const GattEstimate& estimate);
nlohmann::json placebo_to_json(const GattEstimate& estimate, int pre_a, int pre_b);
nlohmann::json group_time_to_json(std::span<const GroupTimeGatt> cells, SpaceId space, int delta,
                                  Comparison comparison);
nlohmann::json sim_report_to_json(const SimReport& report, std::span<const SimConfig> configs);
std::string errors_csv(const SimReport& report);

/// {"error": {"kind", "message", ...}} with rule/unit/period or
/// file/line/column when the error carries them.
nlohmann::json error_to_json(const std::exception& error);

}  // namespace geodid::io
