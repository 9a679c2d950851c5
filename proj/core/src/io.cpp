#include "geodid/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace geodid::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw MissingOutcome("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + file.string());
  out << text;
}

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json_file(const fs::path& file) {
  const std::string text = read_file(file);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(file.string(), line, col, "invalid JSON");
  }
}

std::vector<std::vector<double>> parse_csv_text(const std::string& text, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  int line = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    ++line;
    const std::string_view row(text.data() + pos, eol - pos);
    std::vector<double> values;
    std::size_t i = 0;
    bool expect_value = true;
    while (i < row.size()) {
      const char ch = row[i];
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++i;
        continue;
      }
      if (ch == ',') {
        if (expect_value) {
          throw ParseError(name, line, static_cast<int>(i) + 1, "empty field");
        }
        expect_value = true;
        ++i;
        continue;
      }
      double v = 0.0;
      const char* first = row.data() + i;
      const char* last = row.data() + row.size();
      if (*first == '+') ++first;
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc() || !std::isfinite(v)) {
        throw ParseError(name, line, static_cast<int>(i) + 1, "expected a finite number");
      }
      values.push_back(v);
      expect_value = false;
      i = static_cast<std::size_t>(res.ptr - row.data());
      if (i < row.size() && row[i] != ',' && row[i] != ' ' && row[i] != '\t' && row[i] != '\r') {
        throw ParseError(name, line, static_cast<int>(i) + 1, "unexpected character");
      }
    }
    if (!values.empty()) {
      if (expect_value) throw ParseError(name, line, static_cast<int>(row.size()), "trailing comma");
      rows.push_back(std::move(values));
    }
    pos = eol + 1;
  }
  return rows;
}

std::string csv_row(std::span<const double> xs) {
  std::string out;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j) out += ',';
    out += format_double(xs[j]);
  }
  return out + '\n';
}

// Raw numeric content of one outcome cell, before conversion to a point.
struct CellData {
  std::vector<std::vector<double>> rows;
  std::string origin;
};

CellData read_cell(const json& entry, PanelFormat format, const fs::path& base,
                   const std::string& unit, int period) {
  CellData cell;
  if (entry.is_string()) {
    const fs::path file = base / entry.get<std::string>();
    cell.origin = file.string();
    if (!fs::exists(file)) {
      throw MissingOutcome("unit " + unit + " period " + std::to_string(period) +
                           ": data file " + file.string() + " does not exist");
    }
    if (format == PanelFormat::MatrixJson) {
      const json m = parse_json_file(file);
      if (!m.is_array()) {
        throw InvariantViolation("matrix.json_layout", "matrix-json file must hold an array of rows",
                                 unit, period);
      }
      for (const auto& row : m) {
        if (!row.is_array()) {
          throw InvariantViolation("matrix.json_layout", "matrix-json rows must be arrays", unit, period);
        }
        cell.rows.push_back(row.get<std::vector<double>>());
      }
    } else {
      cell.rows = parse_csv_text(read_file(file), file.string());
    }
    return cell;
  }
  cell.origin = "inline";
  if (entry.is_number()) {
    cell.rows = {{entry.get<double>()}};
  } else if (entry.is_array() && !entry.empty() && entry.front().is_array()) {
    for (const auto& row : entry) cell.rows.push_back(row.get<std::vector<double>>());
  } else if (entry.is_array()) {
    cell.rows = {entry.get<std::vector<double>>()};
  } else {
    throw InvariantViolation("manifest.outcome_type", "outcome must be a path, number or array",
                             unit, period);
  }
  return cell;
}

SpacePoint to_point(const CellData& cell, PanelFormat format, std::size_t grid_size,
                    MatrixKind kind, const std::string& unit, int period) {
  auto flat = [&] {
    std::vector<double> v;
    for (const auto& r : cell.rows) v.insert(v.end(), r.begin(), r.end());
    return v;
  };
  try {
    switch (format) {
      case PanelFormat::SamplesCsv:
        return quantile_from_samples(flat(), grid_size);
      case PanelFormat::QuantileCsv:
        return QuantileCurve(flat());
      case PanelFormat::CompositionCsv: {
        if (cell.rows.size() != 1) {
          throw InvariantViolation("composition.single_row",
                                   "composition cell must hold exactly one row");
        }
        return embed_composition(cell.rows.front());
      }
      case PanelFormat::MatrixCsv:
      case PanelFormat::MatrixJson: {
        const auto m = static_cast<Eigen::Index>(cell.rows.size());
        Eigen::MatrixXd a(m, m);
        for (Eigen::Index r = 0; r < m; ++r) {
          const auto& row = cell.rows[static_cast<std::size_t>(r)];
          if (static_cast<Eigen::Index>(row.size()) != m) {
            throw InvariantViolation("matrix.square", "matrix row " + std::to_string(r) +
                                                          " has " + std::to_string(row.size()) +
                                                          " entries, expected " + std::to_string(m));
          }
          for (Eigen::Index c = 0; c < m; ++c) a(r, c) = row[static_cast<std::size_t>(c)];
        }
        return SymmetricMatrixPoint(std::move(a), kind);
      }
    }
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(e.rule(), std::string(e.what()) + " [" + cell.origin + "]", unit, period);
  } catch (const InvalidArgument& e) {
    throw InvariantViolation("outcome.invalid", std::string(e.what()) + " [" + cell.origin + "]", unit,
                             period);
  }
  throw InvalidArgument("unknown panel format");
}

SpaceId space_for(PanelFormat f) {
  switch (f) {
    case PanelFormat::SamplesCsv:
    case PanelFormat::QuantileCsv:
      return SpaceId::Wasserstein;
    case PanelFormat::CompositionCsv:
      return SpaceId::Sphere;
    case PanelFormat::MatrixCsv:
    case PanelFormat::MatrixJson:
      return SpaceId::Frobenius;
  }
  return SpaceId::Wasserstein;
}

template <class T>
T required(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw InvariantViolation(std::string("manifest.") + key, where + " is missing \"" + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvariantViolation(std::string("manifest.") + key, where + " has a malformed \"" + key + "\"");
  }
}

json warnings_json(const WarningLog& log) {
  json out = json::array();
  for (const auto& w : log) out.push_back({{"kind", to_string(w.kind)}, {"detail", w.detail}});
  return out;
}

}  // namespace

const char* to_string(PanelFormat f) {
  switch (f) {
    case PanelFormat::SamplesCsv:
      return "samples-csv";
    case PanelFormat::QuantileCsv:
      return "quantile-csv";
    case PanelFormat::CompositionCsv:
      return "composition-csv";
    case PanelFormat::MatrixCsv:
      return "matrix-csv";
    case PanelFormat::MatrixJson:
      return "matrix-json";
  }
  return "unknown";
}

PanelFormat panel_format_from_string(const std::string& name) {
  for (auto f : {PanelFormat::SamplesCsv, PanelFormat::QuantileCsv, PanelFormat::CompositionCsv,
                 PanelFormat::MatrixCsv, PanelFormat::MatrixJson}) {
    if (name == to_string(f)) return f;
  }
  throw InvariantViolation("manifest.format", "unknown data format '" + name + "'");
}

std::vector<std::vector<double>> read_csv(const fs::path& file) {
  return parse_csv_text(read_file(file), file.string());
}

PanelDataset load_panel(const fs::path& manifest_path) {
  const json manifest = parse_json_file(manifest_path);
  if (!manifest.is_object()) {
    throw InvariantViolation("manifest.object", "manifest must be a JSON object");
  }
  const fs::path base = manifest_path.parent_path();
  const auto format = panel_format_from_string(required<std::string>(manifest, "format", "manifest"));
  SpaceId space;
  try {
    space = space_id_from_string(required<std::string>(manifest, "space", "manifest"));
  } catch (const InvalidArgument& e) {
    throw InvariantViolation("manifest.space", e.what());
  }
  if (space_for(format) != space) {
    throw InvariantViolation("manifest.format", std::string("format ") + to_string(format) +
                                                    " cannot hold " + to_string(space) + " outcomes");
  }
  const int periods = required<int>(manifest, "periods", "manifest");
  if (periods < 2) throw InvariantViolation("manifest.periods", "manifest needs at least two periods");
  const std::size_t grid_size = manifest.value("grid_size", kDefaultGridSize);
  MatrixKind kind = MatrixKind::Free;
  if (manifest.contains("matrix_kind")) {
    try {
      kind = matrix_kind_from_string(manifest.at("matrix_kind").get<std::string>());
    } catch (const std::exception& e) {
      throw InvariantViolation("manifest.matrix_kind", e.what());
    }
  }
  const json units = required<json>(manifest, "units", "manifest");
  if (!units.is_array() || units.empty()) {
    throw InvariantViolation("manifest.units", "manifest needs a nonempty \"units\" array");
  }

  std::vector<std::string> ids;
  std::vector<std::vector<SpacePoint>> outcomes;
  std::vector<std::vector<std::uint8_t>> treatment;
  for (std::size_t u = 0; u < units.size(); ++u) {
    const json& rec = units[u];
    const std::string where = "unit record " + std::to_string(u);
    if (!rec.is_object()) throw InvariantViolation("manifest.unit", where + " is not an object");
    std::string id = rec.contains("id") ? (rec["id"].is_string() ? rec["id"].get<std::string>()
                                                                  : rec["id"].dump())
                                        : std::to_string(u);

    std::vector<std::uint8_t> d(static_cast<std::size_t>(periods), 0);
    if (rec.contains("treatment")) {
      const auto raw = required<std::vector<int>>(rec, "treatment", where);
      if (raw.size() != d.size()) {
        throw InvariantViolation("manifest.treatment", "treatment row has " + std::to_string(raw.size()) +
                                                           " entries, expected " + std::to_string(periods),
                                 id);
      }
      for (std::size_t t = 0; t < d.size(); ++t) {
        if (raw[t] != 0 && raw[t] != 1) {
          throw InvariantViolation("treatment.binary", "treatment must be 0 or 1", id, static_cast<int>(t));
        }
        d[t] = static_cast<std::uint8_t>(raw[t]);
      }
    } else if (rec.contains("group")) {
      if (!rec["group"].is_null()) {
        const int g = required<int>(rec, "group", where);
        if (g < 1 || g >= periods) {
          throw InvariantViolation("manifest.group", "group must lie in 1..T or be null", id);
        }
        for (int t = g; t < periods; ++t) d[static_cast<std::size_t>(t)] = 1;
      }
    } else {
      throw InvariantViolation("manifest.treatment", where + " needs \"treatment\" or \"group\"", id);
    }

    if (!rec.contains("outcomes") || !rec["outcomes"].is_array()) {
      throw MissingOutcome("unit " + id + " has no \"outcomes\" array");
    }
    const json& cells = rec["outcomes"];
    if (cells.size() != static_cast<std::size_t>(periods)) {
      throw MissingOutcome("unit " + id + " lists " + std::to_string(cells.size()) +
                           " outcomes for " + std::to_string(periods) + " periods");
    }
    std::vector<SpacePoint> row;
    for (int t = 0; t < periods; ++t) {
      const json& entry = cells[static_cast<std::size_t>(t)];
      if (entry.is_null()) {
        throw MissingOutcome("unit " + id + " has no outcome for period " + std::to_string(t));
      }
      row.push_back(to_point(read_cell(entry, format, base, id, t), format, grid_size, kind, id, t));
    }
    ids.push_back(std::move(id));
    outcomes.push_back(std::move(row));
    treatment.push_back(std::move(d));
  }
  return PanelDataset(std::move(ids), std::move(outcomes), std::move(treatment));
}

void save_panel(const PanelDataset& panel, const fs::path& manifest_path, PanelFormat format) {
  if (format == PanelFormat::SamplesCsv) {
    throw InvalidArgument("samples-csv is an input-only format; save as quantile-csv");
  }
  if (space_for(format) != panel.space()) {
    throw InvalidArgument(std::string("format ") + to_string(format) + " cannot hold " +
                          to_string(panel.space()) + " outcomes");
  }
  const fs::path base = manifest_path.parent_path();
  const std::string stem = manifest_path.stem().string();
  const std::string ext = format == PanelFormat::MatrixJson ? ".json" : ".csv";

  json units = json::array();
  MatrixKind kind = MatrixKind::Free;
  for (std::size_t i = 0; i < panel.units(); ++i) {
    json files = json::array();
    std::vector<int> d;
    for (int t = 0; t <= panel.last_period(); ++t) {
      d.push_back(panel.treated(i, t) ? 1 : 0);
      const std::string name = stem + "_u" + std::to_string(i) + "_t" + std::to_string(t) + ext;
      const SpacePoint& p = panel.outcome(i, t);
      std::string text;
      if (const auto* q = std::get_if<QuantileCurve>(&p)) {
        text = csv_row(q->values());
      } else if (const auto* z = std::get_if<UnitCompositionPoint>(&p)) {
        text = csv_row(unembed(*z));
      } else {
        const auto& m = std::get<SymmetricMatrixPoint>(p);
        kind = m.kind();
        const Eigen::MatrixXd& e = m.entries();
        if (format == PanelFormat::MatrixJson) {
          text = "[";
          for (Eigen::Index r = 0; r < e.rows(); ++r) {
            text += r ? ",[" : "[";
            for (Eigen::Index c = 0; c < e.cols(); ++c) {
              if (c) text += ',';
              text += format_double(e(r, c));
            }
            text += ']';
          }
          text += "]\n";
        } else {
          for (Eigen::Index r = 0; r < e.rows(); ++r) {
            std::vector<double> row(static_cast<std::size_t>(e.cols()));
            for (Eigen::Index c = 0; c < e.cols(); ++c) row[static_cast<std::size_t>(c)] = e(r, c);
            text += csv_row(row);
          }
        }
      }
      write_file(base / name, text);
      files.push_back(name);
    }
    units.push_back({{"id", panel.unit_id(i)}, {"treatment", d}, {"outcomes", files}});
  }
  json manifest = {{"space", to_string(panel.space())},
                   {"format", to_string(format)},
                   {"periods", panel.periods()},
                   {"units", units}};
  if (panel.space() == SpaceId::Frobenius) manifest["matrix_kind"] = to_string(kind);
  write_file(manifest_path, manifest.dump(2) + "\n");
}

json point_to_json(const SpacePoint& point) {
  if (const auto* q = std::get_if<QuantileCurve>(&point)) {
    return {{"quantiles", std::vector<double>(q->values().begin(), q->values().end())}};
  }
  if (const auto* z = std::get_if<UnitCompositionPoint>(&point)) {
    return {{"shares", unembed(*z)},
            {"coords", std::vector<double>(z->coords().begin(), z->coords().end())},
            {"in_orthant", z->in_orthant()}};
  }
  const auto& m = std::get<SymmetricMatrixPoint>(point);
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.size(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.size()));
    for (Eigen::Index c = 0; c < m.size(); ++c) row[static_cast<std::size_t>(c)] = m.entries()(r, c);
    rows.push_back(row);
  }
  return {{"kind", to_string(m.kind())}, {"entries", rows}};
}

SpacePoint point_from_json(const json& payload, SpaceId space) {
  try {
    switch (space) {
      case SpaceId::Wasserstein:
        return QuantileCurve(payload.at("quantiles").get<std::vector<double>>());
      case SpaceId::Sphere:
        return UnitCompositionPoint(payload.at("coords").get<std::vector<double>>());
      case SpaceId::Frobenius: {
        const auto rows = payload.at("entries").get<std::vector<std::vector<double>>>();
        const auto m = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd a(m, m);
        for (Eigen::Index r = 0; r < m; ++r) {
          if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != m) {
            throw InvariantViolation("matrix.square", "matrix payload is not square");
          }
          for (Eigen::Index c = 0; c < m; ++c) {
            a(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
          }
        }
        return SymmetricMatrixPoint::without_kind_check(
            std::move(a), matrix_kind_from_string(payload.value("kind", std::string("free"))));
      }
    }
  } catch (const json::exception& e) {
    throw InvariantViolation("payload.schema", e.what());
  }
  throw InvalidArgument("unknown space");
}

json gatt_to_json(const GattEstimate& est) {
  const auto& m = est.means;
  return {{"schema_version", kSchemaVersion},
          {"space", to_string(est.effect.space())},
          {"estimate",
           {{"start", point_to_json(est.effect.start())},
            {"end", point_to_json(est.effect.end())},
            {"magnitude", est.magnitude},
            {"counterfactual_start", point_to_json(est.counterfactual_start)},
            {"means",
             {{"control_pre", point_to_json(m.control_pre)},
              {"control_post", point_to_json(m.control_post)},
              {"treated_pre", point_to_json(m.treated_pre)},
              {"treated_post", point_to_json(m.treated_post)}}},
            {"control_units", est.control_units},
            {"treated_units", est.treated_units},
            {"warnings", warnings_json(est.warnings)}}}};
}

json placebo_to_json(const GattEstimate& estimate, int pre_a, int pre_b) {
  json out = gatt_to_json(estimate);
  out["placebo_periods"] = {pre_a, pre_b};
  return out;
}

json group_time_to_json(std::span<const GroupTimeGatt> cells, SpaceId space, int delta,
                        Comparison comparison) {
  json rows = json::array();
  for (const auto& c : cells) {
    json path = json::array();
    for (const auto& b : c.beta_path) path.push_back(point_to_json(b));
    rows.push_back({{"g", c.cell.g},
                    {"t", c.cell.t},
                    {"delta", c.cell.delta},
                    {"comparison", to_string(c.cell.comparison)},
                    {"form", to_string(c.cell.form)},
                    {"magnitude", c.magnitude},
                    {"start", point_to_json(c.effect.start())},
                    {"end", point_to_json(c.effect.end())},
                    {"beta_path", path},
                    {"group_units", c.group_units},
                    {"comparison_units", c.comparison_units},
                    {"warnings", warnings_json(c.warnings)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"space", to_string(space)},
          {"delta", delta},
          {"comparison", to_string(comparison)},
          {"cells", rows}};
}

json sim_report_to_json(const SimReport& report, std::span<const SimConfig> configs) {
  json cfg = json::object();
  if (!configs.empty()) {
    const auto& c = configs.front();
    const auto& d = c.dgp;
    std::vector<std::size_t> ns;
    for (const auto& x : configs) ns.push_back(x.n);
    cfg = {{"n", ns},
           {"q", c.runs},
           {"treat_prob", c.treat_prob},
           {"seed", c.seed},
           {"grid_size", c.grid_size},
           {"dgp",
            {{"alpha1", d.alpha1},
             {"alpha2", d.alpha2},
             {"alpha3", d.alpha3},
             {"beta", d.beta},
             {"samples_per_dist", d.samples_per_dist},
             {"m1", d.m1},
             {"m2", d.m2},
             {"p11", d.p11},
             {"p12", d.p12},
             {"p21", d.p21},
             {"p22", d.p22}}}};
  }
  json sizes = json::array();
  for (const auto& s : report.sizes) {
    sizes.push_back({{"n", s.n},
                     {"completed", s.completed},
                     {"failed", s.failed},
                     {"mean_error", s.mean_error},
                     {"median_error", s.median_error}});
  }
  json runs = json::array();
  for (const auto& r : report.runs) {
    json row = {{"n", r.n}, {"run", r.run}, {"seed", r.seed}, {"ok", r.ok}};
    row["error"] = r.ok ? json(r.error) : json(nullptr);
    if (!r.ok) row["failure"] = r.failure;
    runs.push_back(row);
  }
  return {{"schema_version", kSchemaVersion},
          {"space", to_string(report.space)},
          {"config", cfg},
          {"sizes", sizes},
          {"slope", report.fit ? json(report.fit->slope) : json(nullptr)},
          {"intercept", report.fit ? json(report.fit->intercept) : json(nullptr)},
          {"runs", runs}};
}

std::string errors_csv(const SimReport& report) {
  std::string out = "n,run,seed,error\n";
  for (const auto& r : report.runs) {
    if (!r.ok) continue;
    out += std::to_string(r.n) + "," + std::to_string(r.run) + "," + std::to_string(r.seed) + "," +
           format_double(r.error) + "\n";
  }
  return out;
}

json error_to_json(const std::exception& error) {
  json body = {{"kind", "Error"}, {"message", error.what()}};
  if (const auto* e = dynamic_cast<const Error*>(&error)) body["kind"] = e->kind();
  if (const auto* e = dynamic_cast<const InvariantViolation*>(&error)) {
    body["rule"] = e->rule();
    if (e->unit()) body["unit"] = *e->unit();
    if (e->period()) body["period"] = *e->period();
  }
  if (const auto* e = dynamic_cast<const ParseError*>(&error)) {
    body["file"] = e->file();
    body["line"] = e->line();
    body["column"] = e->column();
  }
  if (const auto* e = dynamic_cast<const EmptyCohort*>(&error)) body["period"] = e->period();
  return {{"error", body}};
}

}  // namespace geodid::io
