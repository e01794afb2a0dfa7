// SPDX-License-Identifier: Apache-2.0
#include "fdband/serialize.hpp"

#include "fdband/error.hpp"
#include "text_util.hpp"

#include <json.hpp>

namespace fdband {

using detail::format_double;

namespace {

std::string one_line(std::string s) {
  for (auto& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string grid_function_csv(const GridFunction& f) {
  std::string out = "# label: " + one_line(f.label) + "\nday,value\n";
  for (std::size_t j = 0; j < f.grid.size(); ++j)
    out += format_double(f.grid[j]) + ',' + format_double(f.values[j]) + '\n';
  return out;
}

GridFunction parse_grid_function_csv(std::string_view text) {
  GridFunction out;
  bool header = false;
  std::size_t line_no = 0;
  for (auto line : detail::lines(text)) {
    ++line_no;
    if (line.starts_with("# label: ")) {
      out.label = std::string(line.substr(9));
      continue;
    }
    if (line.starts_with('#') || detail::trim(line).empty()) continue;
    if (!header) {
      if (detail::trim(line) != "day,value") throw ParseError("expected header 'day,value'", line_no);
      header = true;
      continue;
    }
    const auto fields = detail::split(line, ',');
    const auto day = fields.size() == 2 ? detail::parse_double(fields[0]) : std::nullopt;
    const auto value = fields.size() == 2 ? detail::parse_double(fields[1]) : std::nullopt;
    if (!day || !value) throw ParseError("malformed grid function row", line_no);
    out.grid.push_back(*day);
    out.values.push_back(*value);
  }
  if (!header) throw ParseError("missing 'day,value' header");
  return out;
}

std::string band_csv(const ConfidenceBand& band) {
  std::string out;
  out += "# level: " + format_double(band.level) + '\n';
  out += "# b_samples: " + std::to_string(band.b_samples) + '\n';
  out += "# seed: " + std::to_string(band.seed) + '\n';
  out += "# block: " + band.years.label() + '\n';
  out += "day,lower,center,upper\n";
  for (std::size_t j = 0; j < band.grid.size(); ++j)
    out += format_double(band.grid[j]) + ',' + format_double(band.lower[j]) + ',' + format_double(band.center[j]) +
           ',' + format_double(band.upper[j]) + '\n';
  return out;
}

std::string phase_curve_csv(const PhaseCurve& curve) {
  std::string out;
  if (!curve.label.empty()) out += "# label: " + one_line(curve.label) + '\n';
  out += "day,area,velocity,acceleration\n";
  for (std::size_t j = 0; j < curve.grid.size(); ++j)
    out += format_double(curve.grid[j]) + ',' + format_double(curve.area[j]) + ',' +
           format_double(curve.velocity[j]) + ',' + format_double(curve.acceleration[j]) + '\n';
  return out;
}

std::string month_anchor_json(const PhaseCurve& curve) {
  auto anchors = nlohmann::json::array();
  for (const auto& a : curve.month_anchors)
    anchors.push_back({{"month", a.month}, {"day", a.day}, {"grid_index", a.grid_index}});
  return nlohmann::json{{"label", curve.label}, {"month_anchors", anchors}}.dump(2) + '\n';
}

std::string change_curve_csv(const ChangeCurve& curve, bool percent) {
  std::string out;
  out += "# baseline: " + one_line(curve.baseline_label) + '\n';
  out += "# target: " + one_line(curve.target_label) + '\n';
  out += percent ? "day,change_percent\n" : "day,change_fraction\n";
  for (std::size_t j = 0; j < curve.grid.size(); ++j) {
    out += format_double(curve.grid[j]) + ',';
    out += curve.defined[j] ? format_double(percent ? 100.0 * curve.values[j] : curve.values[j]) : "NA";
    out += '\n';
  }
  return out;
}

std::string coefficients_csv(const CurveEnsemble& ensemble) {
  std::string out = "year";
  for (int k = 1; k <= ensemble.basis.count(); ++k) out += ",c" + std::to_string(k);
  out += '\n';
  for (const auto& curve : ensemble.curves) {
    out += std::to_string(curve.year());
    for (double c : curve.coefficients()) out += ',' + format_double(c);
    out += '\n';
  }
  return out;
}

std::string mse_profile_csv(const MseProfile& profile) {
  std::string out = "p,mse_hat,first_diff\n";
  for (std::size_t i = 0; i < profile.p_values.size(); ++i) {
    out += std::to_string(profile.p_values[i]) + ',' + format_double(profile.mse_hat[i]) + ',';
    if (i > 0) out += format_double(profile.first_diff[i - 1]);
    out += '\n';
  }
  return out;
}

std::string grid_table_csv(const std::vector<GridFunction>& columns, const std::string& comment) {
  if (columns.empty()) throw ArgumentError("grid table needs at least one column");
  for (const auto& c : columns)
    if (c.grid != columns.front().grid || c.values.size() != c.grid.size())
      throw ArgumentError("grid table columns must share one grid");

  std::string out;
  if (!comment.empty()) out += "# " + one_line(comment) + '\n';
  out += "day";
  for (const auto& c : columns) out += ',' + csv_field(c.label);
  out += '\n';
  const auto& grid = columns.front().grid;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out += format_double(grid[j]);
    for (const auto& c : columns) out += ',' + format_double(c.values[j]);
    out += '\n';
  }
  return out;
}

}  // namespace fdband
