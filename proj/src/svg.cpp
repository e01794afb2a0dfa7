// SPDX-License-Identifier: Apache-2.0
#include "fdband/svg.hpp"

#include "fdband/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fdband {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 80;
constexpr double kRight = 170;  // legend column
constexpr double kTop = 50;
constexpr double kBottom = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string_view dash(LineStyle style) {
  switch (style) {
    case LineStyle::dashed: return " stroke-dasharray=\"8,4\"";
    case LineStyle::dotted: return " stroke-dasharray=\"2,3\"";
    default: return "";
  }
}

std::string_view style_name(LineStyle style) {
  switch (style) {
    case LineStyle::dashed: return "dashed";
    case LineStyle::dotted: return "dotted";
    default: return "solid";
  }
}

LineStyle parse_style(const std::string& name) {
  if (name == "solid") return LineStyle::solid;
  if (name == "dashed") return LineStyle::dashed;
  if (name == "dotted") return LineStyle::dotted;
  throw ArgumentError("unknown line style '" + name + "'");
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0;
      hi = 1;
    } else if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      const double pad = 0.04 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::vector<std::string> block_colors(std::size_t blocks) {
  switch (blocks) {
    case 0: return {};
    case 1: return {"red"};
    case 2: return {"red", "blue"};
    case 3: return {"red", "green", "blue"};
    case 4: return {"red", "green", "brown", "blue"};
    case 5: return {"red", "green", "brown", "gold", "blue"};
    default: {
      std::vector<std::string> out{"red", "green", "brown", "gold", "blue", "purple", "orange", "teal", "gray"};
      while (out.size() < blocks) out.push_back("black");
      out.resize(blocks);
      return out;
    }
  }
}

FigureBundle band_figure(const std::vector<ConfidenceBand>& bands, std::string title) {
  FigureBundle fig;
  fig.kind = "band";
  fig.title = std::move(title);
  fig.x_label = "day of year";
  fig.y_label = "sea ice area (million km^2)";
  const auto colors = block_colors(bands.size());
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& b = bands[i];
    const auto label = b.years.label();
    fig.series.push_back({label + " lower", colors[i], LineStyle::dotted, b.grid, b.lower, {}});
    fig.series.push_back({label, colors[i], LineStyle::solid, b.grid, b.center, {}});
    fig.series.push_back({label + " upper", colors[i], LineStyle::dotted, b.grid, b.upper, {}});
  }
  return fig;
}

FigureBundle phase_figure(const std::vector<PhaseCurve>& curves, PhaseAxes axes, std::string title) {
  FigureBundle fig;
  fig.kind = "phase";
  fig.title = std::move(title);
  const auto colors = block_colors(curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    PlotSeries s{c.label, colors[i], LineStyle::solid, {}, {}, {}};
    switch (axes) {
      case PhaseAxes::area_velocity:
        s.x = c.area;
        s.y = c.velocity;
        break;
      case PhaseAxes::area_acceleration:
        s.x = c.area;
        s.y = c.acceleration;
        break;
      case PhaseAxes::velocity_acceleration:
        s.x = c.velocity;
        s.y = c.acceleration;
        break;
    }
    for (const auto& a : c.month_anchors) s.annotations.emplace_back(a.grid_index, a.month);
    fig.series.push_back(std::move(s));
  }
  switch (axes) {
    case PhaseAxes::area_velocity:
      fig.x_label = "area (million km^2)";
      fig.y_label = "velocity (million km^2/day)";
      break;
    case PhaseAxes::area_acceleration:
      fig.x_label = "area (million km^2)";
      fig.y_label = "acceleration (million km^2/day^2)";
      break;
    case PhaseAxes::velocity_acceleration:
      fig.x_label = "velocity (million km^2/day)";
      fig.y_label = "acceleration (million km^2/day^2)";
      break;
  }
  return fig;
}

std::string emit_svg(const FigureBundle& figure) {
  if (figure.kind != "lines" && figure.kind != "band" && figure.kind != "phase")
    throw ArgumentError("unknown figure kind '" + figure.kind + "'");

  Range xr;
  Range yr;
  for (const auto& s : figure.series) {
    if (s.x.size() != s.y.size()) throw ArgumentError("series '" + s.label + "' has mismatched x and y lengths");
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.finish();
  yr.finish();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" viewBox=\"0 0 " + num(kWidth) + ' ' + num(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + xml_escape(figure.title) + "</text>\n";

  // axes and ticks
  out += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) + "\" height=\"" +
         num(plot_h) + "\"/>\n";
  out += "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    out += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" +
           tick(xv) + "</text>\n";
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\">" + tick(yv) +
           "</text>\n";
  }
  out += "</g>\n";
  out += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + xml_escape(figure.x_label) +
         "</text>\n";
  out += "<text transform=\"translate(18," + num(kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         xml_escape(figure.y_label) + "</text>\n";

  // data
  out += "<g class=\"data\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (const auto& s : figure.series) {
    out += "<polyline stroke=\"" + xml_escape(s.color) + "\"" + std::string(dash(s.style)) + " points=\"";
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      if (j) out += ' ';
      out += num(px(s.x[j])) + ',' + num(py(s.y[j]));
    }
    out += "\"><title>" + xml_escape(s.label) + "</title></polyline>\n";
  }
  out += "</g>\n";

  bool any_annotation = false;
  for (const auto& s : figure.series) any_annotation = any_annotation || !s.annotations.empty();
  if (any_annotation) {
    out += "<g class=\"annotations\" font-family=\"sans-serif\" font-size=\"9\">\n";
    for (const auto& s : figure.series)
      for (const auto& [index, text] : s.annotations) {
        if (index >= s.x.size()) continue;
        out += "<circle cx=\"" + num(px(s.x[index])) + "\" cy=\"" + num(py(s.y[index])) + "\" r=\"2\" fill=\"" +
               xml_escape(s.color) + "\"/>";
        out += "<text x=\"" + num(px(s.x[index]) + 3) + "\" y=\"" + num(py(s.y[index]) - 3) + "\" fill=\"" +
               xml_escape(s.color) + "\">" + xml_escape(text) + "</text>\n";
      }
    out += "</g>\n";
  }

  // legend: one entry per distinct (label, color) of solid/dashed series
  out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  double ly = kTop + 10;
  for (const auto& s : figure.series) {
    if (figure.kind == "band" && s.style == LineStyle::dotted) continue;
    const double lx = kWidth - kRight + 12;
    out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly) +
           "\" stroke=\"" + xml_escape(s.color) + "\"" + std::string(dash(s.style)) + "/>";
    out += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly + 4) + "\">" + xml_escape(s.label) + "</text>\n";
    ly += 16;
  }
  out += "</g>\n</svg>\n";
  return out;
}

FigureBundle parse_figure_bundle(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("figure bundle is not valid JSON: ") + e.what());
  }
  try {
    FigureBundle fig;
    fig.kind = doc.at("kind").get<std::string>();
    fig.title = doc.value("title", "");
    fig.x_label = doc.value("x_label", "");
    fig.y_label = doc.value("y_label", "");
    for (const auto& s : doc.value("series", nlohmann::json::array())) {
      PlotSeries series;
      series.label = s.value("label", "");
      series.color = s.value("color", "black");
      series.style = parse_style(s.value("style", "solid"));
      series.x = s.at("x").get<std::vector<double>>();
      series.y = s.at("y").get<std::vector<double>>();
      for (const auto& a : s.value("annotations", nlohmann::json::array()))
        series.annotations.emplace_back(a.at("index").get<std::size_t>(), a.at("text").get<std::string>());
      fig.series.push_back(std::move(series));
    }
    return fig;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed figure bundle: ") + e.what());
  }
}

std::string figure_bundle_json(const FigureBundle& figure) {
  auto series = nlohmann::json::array();
  for (const auto& s : figure.series) {
    auto annotations = nlohmann::json::array();
    for (const auto& [index, text] : s.annotations) annotations.push_back({{"index", index}, {"text", text}});
    series.push_back({{"label", s.label},
                      {"color", s.color},
                      {"style", style_name(s.style)},
                      {"x", s.x},
                      {"y", s.y},
                      {"annotations", annotations}});
  }
  return nlohmann::json{{"kind", figure.kind},
                        {"title", figure.title},
                        {"x_label", figure.x_label},
                        {"y_label", figure.y_label},
                        {"series", series}}
      .dump();
}

}  // namespace fdband
