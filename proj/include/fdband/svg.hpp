// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/bootstrap_bands.hpp"
#include "fdband/phase_plane.hpp"

#include <string>
#include <vector>

namespace fdband {

enum class LineStyle { solid, dashed, dotted };

struct PlotSeries {
  std::string label;
  std::string color = "black";
  LineStyle style = LineStyle::solid;
  std::vector<double> x;
  std::vector<double> y;
  /// Optional point labels drawn next to vertices (e.g. month anchors).
  std::vector<std::pair<std::size_t, std::string>> annotations;
};

/// Plot description independent of any figure layout. Kinds:
///   "lines"  day-indexed curves (means, variances, change curves, MSE)
///   "band"   confidence bands: dotted lower/upper and a solid center per block
///   "phase"  closed phase-plane trajectories with month annotations
struct FigureBundle {
  std::string kind = "lines";
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Block colors in figure order: red, green, brown, yellow, blue for five
/// blocks, dropping the middle colors for fewer blocks.
std::vector<std::string> block_colors(std::size_t blocks);

FigureBundle band_figure(const std::vector<ConfidenceBand>& bands, std::string title);

enum class PhaseAxes { area_velocity, area_acceleration, velocity_acceleration };
FigureBundle phase_figure(const std::vector<PhaseCurve>& curves, PhaseAxes axes, std::string title);

/// Self-contained SVG document. Throws ArgumentError for an unknown kind or
/// a series whose x and y lengths differ.
std::string emit_svg(const FigureBundle& figure);

/// JSON form of a bundle: {"kind", "title", "x_label", "y_label",
/// "series": [{"label", "color", "style", "x", "y"}]}. Throws ArgumentError.
FigureBundle parse_figure_bundle(std::string_view json_text);
std::string figure_bundle_json(const FigureBundle& figure);

}  // namespace fdband
