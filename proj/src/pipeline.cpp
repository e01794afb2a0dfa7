// SPDX-License-Identifier: Apache-2.0
#include "fdband/pipeline.hpp"

#include "fdband/change_measure.hpp"
#include "fdband/phase_plane.hpp"
#include "fdband/rng.hpp"
#include "fdband/serialize.hpp"
#include "fdband/svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

namespace fdband {

using nlohmann::json;

namespace {

constexpr const char* kManifestName = "manifest.json";
constexpr const char* kToolName = "fdband";
constexpr const char* kToolVersion = "1.0.0";

// ---------------------------------------------------------------- config

const std::set<std::string> kConfigKeys{
    "inputs",       "first_year",  "last_year",      "basis_count", "p_values",      "flatness_tol",
    "period",       "decade_blocks", "decade_preset", "block_counts", "band_preset",  "explicit_blocks",
    "b_samples",    "level",       "seed",           "parallelism", "change_epsilon", "percent",
    "extrema_radius", "output_dir", "emit",          "svg"};

template <typename T>
void read_key(const json& doc, const char* key, T& field) {
  if (doc.contains(key)) field = doc.at(key).get<T>();
}

template <typename T>
void read_optional(const json& doc, const char* key, std::optional<T>& field) {
  if (!doc.contains(key)) return;
  if (doc.at(key).is_null())
    field.reset();
  else
    field = doc.at(key).get<T>();
}

// ---------------------------------------------------------------- output

struct FileRecord {
  std::string path;
  std::vector<std::string> figures;
  std::string operation;
  std::string region;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  std::size_t bytes = 0;
};

class OutputWriter {
 public:
  explicit OutputWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(FileRecord record, const std::string& content) {
    const auto path = dir_ / record.path;
    {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << content;
      if (!out) throw ConfigError("cannot write " + path.string());
    }
    record.bytes = content.size();
    records_.push_back(std::move(record));
  }

  const std::vector<FileRecord>& records() const noexcept { return records_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<FileRecord> records_;
};

json manifest_json(const RunConfig& config, const std::vector<FileRecord>& records, bool complete,
                   const json& error, const json& summaries) {
  json files = json::array();
  std::map<std::string, std::vector<std::string>> figures;
  for (const auto& r : records) {
    files.push_back({{"path", r.path},
                     {"figures", r.figures},
                     {"operation", r.operation},
                     {"region", r.region},
                     {"parameters", r.parameters},
                     {"seed", r.seed ? json(*r.seed) : json(nullptr)},
                     {"bytes", r.bytes}});
    for (const auto& f : r.figures) figures[f].push_back(r.path);
  }
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"complete", complete},
          {"error", error},
          {"config", json::parse(config.to_json())},
          {"summaries", summaries},
          {"figures", figures},
          {"files", files}};
}

std::filesystem::path resolve_output_dir(const RunConfig& config) {
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  throw ConfigError(std::string("no output directory given and $") + kOutputDirEnv + " is unset");
}

/// Creates the directory, clearing files listed by a previous run's manifest.
void prepare_output_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());

  const auto manifest = dir / kManifestName;
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    json previous;
    try {
      previous = json::parse(in);
    } catch (const json::exception&) {
      throw ConfigError(manifest.string() + " exists but is not an fdband manifest");
    }
    if (previous.value("tool", "") != kToolName)
      throw ConfigError(manifest.string() + " exists but is not an fdband manifest");
    for (const auto& f : previous.value("files", json::array())) {
      const fs::path rel = f.value("path", "");
      if (rel.empty() || rel.is_absolute() || rel.filename() != rel) continue;
      fs::remove(dir / rel, ec);
    }
    fs::remove(manifest, ec);
  }
  if (!fs::is_empty(dir))
    throw ConfigError("output directory " + dir.string() + " contains files not produced by a previous run");
}

// ---------------------------------------------------------------- stages

std::string fig_id(int number, std::string_view suffix = {}) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "fig%02d", number);
  return std::string(buf) + std::string(suffix);
}

std::optional<std::string> band_figure_id(Region region, int blocks) {
  if (blocks < 2 || blocks > 5) return std::nullopt;
  return fig_id((region == Region::arctic ? 6 : 10) + blocks);
}

GridFunction labelled(GridFunction f, std::string label) {
  f.label = std::move(label);
  return f;
}

json extrema_json(const ExtremaSummary& e) {
  return {{"min_value", e.min_value},
          {"min_day", e.min_day},
          {"min_window", {e.min_window.first, e.min_window.last}},
          {"max_value", e.max_value},
          {"max_day", e.max_day},
          {"max_window", {e.max_window.first, e.max_window.last}},
          {"mean_level", e.mean_level}};
}

Dataset restrict_years(Dataset dataset, const RunConfig& config) {
  std::erase_if(dataset.years, [&](const RawYearSeries& y) {
    return (config.first_year && y.year < *config.first_year) || (config.last_year && y.year > *config.last_year);
  });
  if (dataset.years.empty()) throw ConfigError("no data years remain inside the configured year range");
  return dataset;
}

struct RegionRun {
  const RunConfig& config;
  OutputWriter& out;
  std::string& stage;
  json& summaries;

  void svg(const std::string& name, const std::vector<std::string>& figures, const std::string& region,
           const FigureBundle& figure) {
    if (!config.svg) return;
    out.write({name, figures, "emit_svg", region, {{"kind", figure.kind}}, std::nullopt, 0}, emit_svg(figure));
  }

  void run(const RegionInput& input) {
    const std::string region{region_name(input.region)};
    json& summary = summaries[region];

    stage = "ingest";
    const Dataset dataset = restrict_years(read_canonical_csv(input.path, input.region), config);
    summary["years"] = {dataset.first_year(), dataset.last_year()};

    if (config.emits("raw")) {
      out.write({"fig01_raw_" + region + ".csv", {"fig01"}, "parse_canonical_csv", region,
                 {{"input", input.path}}, std::nullopt, 0},
                write_canonical_csv(dataset));
    }

    stage = "select-basis";
    std::optional<MseProfile> profile;
    if (config.emits("mse_profile") || config.basis_count == 0) {
      profile = mse_profile(dataset, config.p_values, config.period);
      const auto selection = select_basis_count(*profile, config.flatness_tol);
      summary["basis_selection"] = {{"selected", selection.basis_count},
                                    {"converged", selection.converged},
                                    {"flatness_tol", config.flatness_tol},
                                    {"warnings", profile->warnings}};
      if (config.emits("mse_profile")) {
        out.write({"fig03_mse_profile_" + region + ".csv", {"fig03", "fig04"}, "mse_profile", region,
                   {{"p_values", config.p_values}, {"period", config.period}}, std::nullopt, 0},
                  mse_profile_csv(*profile));
        out.write({"basis_selection_" + region + ".json", {}, "select_basis_count", region,
                   {{"flatness_tol", config.flatness_tol}}, std::nullopt, 0},
                  summary["basis_selection"].dump(2) + '\n');
        FigureBundle mse{"lines", "MSE vs number of basis functions (" + region + ")", "p", "MSE", {}};
        FigureBundle diff{"lines", "First difference of MSE (" + region + ")", "p", "first difference", {}};
        PlotSeries s_mse{"MSE", "black", LineStyle::solid, {}, profile->mse_hat, {}};
        PlotSeries s_diff{"first difference", "black", LineStyle::solid, {}, profile->first_diff, {}};
        for (std::size_t i = 0; i < profile->p_values.size(); ++i) {
          s_mse.x.push_back(profile->p_values[i]);
          if (i > 0) s_diff.x.push_back(profile->p_values[i]);
        }
        mse.series.push_back(std::move(s_mse));
        diff.series.push_back(std::move(s_diff));
        svg("fig03_" + region + ".svg", {"fig03"}, region, mse);
        svg("fig04_" + region + ".svg", {"fig04"}, region, diff);
      }
      if (config.basis_count == 0) summary["basis_count"] = selection.basis_count;
    }
    const int basis_count =
        config.basis_count != 0 ? config.basis_count : summary["basis_selection"]["selected"].get<int>();
    summary["basis_count"] = basis_count;

    const bool needs_curves = config.emits("smooth") || config.emits("stats") || config.emits("bands") ||
                              config.emits("phase") || config.emits("change");
    if (!needs_curves) return;

    stage = "smooth";
    const FourierBasis basis(basis_count, config.period);
    const CurveEnsemble ensemble = smooth_dataset(dataset, basis);
    if (config.emits("smooth")) {
      out.write({"coefficients_" + region + ".csv", {"fig02"}, "fit_year", region,
                 {{"basis_count", basis_count}, {"period", config.period}}, std::nullopt, 0},
                coefficients_csv(ensemble));
      std::vector<GridFunction> columns;
      FigureBundle fig{"lines", "Smoothed sea ice area (" + region + ")", "day of year", "million km^2", {}};
      for (const auto& curve : ensemble.curves) {
        columns.push_back({ensemble.grid, curve.evaluate(ensemble.grid), std::to_string(curve.year())});
        fig.series.push_back({columns.back().label, "gray", LineStyle::solid, ensemble.grid, columns.back().values, {}});
      }
      out.write({"fig02_smooth_" + region + ".csv", {"fig02"}, "fit_year", region,
                 {{"basis_count", basis_count}}, std::nullopt, 0},
                grid_table_csv(columns, "smoothed curves evaluated on days 1..365"));
      svg("fig02_" + region + ".svg", {"fig02"}, region, fig);
    }

    stage = "stats";
    const auto decade_partition = preset_partition(ensemble.first_year(), static_cast<int>(ensemble.size()),
                                                   config.decade_blocks, config.decade_preset);
    const auto decades = group_by_blocks(ensemble, decade_partition);
    std::vector<GridFunction> decade_means;
    for (std::size_t i = 0; i < decades.size(); ++i)
      decade_means.push_back(labelled(mean_function(decades[i]), decade_partition.blocks[i].label()));

    if (config.emits("stats")) {
      const auto all_mean = labelled(mean_function(ensemble), "all years");
      json extrema = json::object();
      extrema["all years"] = extrema_json(extrema_summary(all_mean, config.extrema_radius));
      for (const auto& m : decade_means) extrema[m.label] = extrema_json(extrema_summary(m, config.extrema_radius));
      summary["extrema"] = extrema;
      out.write({"summary_" + region + ".json", {}, "extrema_summary", region,
                 {{"window_radius", config.extrema_radius}}, std::nullopt, 0},
                extrema.dump(2) + '\n');

      std::vector<GridFunction> means{all_mean};
      means.insert(means.end(), decade_means.begin(), decade_means.end());
      const json partition_sizes = decade_partition.sizes();
      out.write({"fig05_means_" + region + ".csv", {"fig05"}, "mean_function", region,
                 {{"blocks", partition_sizes}}, std::nullopt, 0},
                grid_table_csv(means));

      std::vector<GridFunction> diffs;
      for (std::size_t i = 0; i + 1 < decade_means.size(); ++i)
        diffs.push_back(mean_difference(decade_means[i], decade_means[i + 1]));
      if (!diffs.empty())
        out.write({"fig06_mean_diff_" + region + ".csv", {"fig06"}, "mean_difference", region,
                   {{"blocks", partition_sizes}}, std::nullopt, 0},
                  grid_table_csv(diffs));

      std::vector<GridFunction> variances;
      if (ensemble.size() >= 2) variances.push_back(labelled(variance_function(ensemble), "all years"));
      for (std::size_t i = 0; i < decades.size(); ++i)
        if (decades[i].size() >= 2)
          variances.push_back(labelled(variance_function(decades[i]), decade_partition.blocks[i].label()));
      if (!variances.empty())
        out.write({"fig07_variance_" + region + ".csv", {"fig07"}, "variance_function", region,
                   {{"blocks", partition_sizes}}, std::nullopt, 0},
                  grid_table_csv(variances));

      if (config.svg) {
        const auto colors = block_colors(decade_means.size());
        FigureBundle f5{"lines", "Mean functions (" + region + ")", "day of year", "million km^2", {}};
        f5.series.push_back({all_mean.label, "black", LineStyle::dashed, all_mean.grid, all_mean.values, {}});
        for (std::size_t i = 0; i < decade_means.size(); ++i)
          f5.series.push_back({decade_means[i].label, colors[i], LineStyle::solid, decade_means[i].grid,
                               decade_means[i].values, {}});
        svg("fig05_" + region + ".svg", {"fig05"}, region, f5);
        FigureBundle f6{"lines", "Consecutive mean differences (" + region + ")", "day of year", "million km^2", {}};
        const std::vector<std::string> diff_colors{"black", "red", "blue", "green"};
        for (std::size_t i = 0; i < diffs.size(); ++i)
          f6.series.push_back({diffs[i].label, diff_colors[i % diff_colors.size()], LineStyle::solid, diffs[i].grid,
                               diffs[i].values, {}});
        svg("fig06_" + region + ".svg", {"fig06"}, region, f6);
        FigureBundle f7{"lines", "Variance functions (" + region + ")", "day of year", "(million km^2)^2", {}};
        for (std::size_t i = 0; i < variances.size(); ++i)
          f7.series.push_back({variances[i].label, i == 0 ? "black" : colors[(i - 1) % colors.size()],
                               i == 0 ? LineStyle::dashed : LineStyle::solid, variances[i].grid,
                               variances[i].values, {}});
        svg("fig07_" + region + ".svg", {"fig07"}, region, f7);
      }
    }

    if (config.emits("bands")) {
      stage = "bands";
      std::vector<std::pair<int, BlockPartition>> partitions;
      if (!config.explicit_blocks.empty()) {
        partitions.emplace_back(0, BlockPartition{config.explicit_blocks});
      } else {
        for (int t : config.block_counts)
          partitions.emplace_back(
              t, preset_partition(ensemble.first_year(), static_cast<int>(ensemble.size()), t, config.band_preset));
      }
      json band_summary = json::object();
      for (const auto& [t, partition] : partitions) {
        const auto blocks = group_by_blocks(ensemble, partition);
        const auto figure = band_figure_id(input.region, t);
        const std::vector<std::string> figures = figure ? std::vector<std::string>{*figure} : std::vector<std::string>{};
        const std::string stem =
            (figure ? *figure + "_" : std::string()) + "bands_" + region + (t ? "_t" + std::to_string(t) : "_custom");

        std::vector<ConfidenceBand> bands;
        std::vector<GridFunction> variances;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
          BootstrapOptions options;
          options.b_samples = config.b_samples;
          options.level = config.level;
          options.parallelism = config.parallelism;
          options.seed = derive_seed(config.seed, {static_cast<std::uint64_t>(input.region),
                                                   static_cast<std::uint64_t>(t), i});
          const auto replicates =
              bootstrap_replicates(blocks[i], options.b_samples, options.seed, options.parallelism);
          bands.push_back(band_from_replicates(replicates, blocks[i], options));
          variances.push_back(labelled(variance_from_replicates(replicates, blocks[i].grid),
                                       partition.blocks[i].label()));
          out.write({stem + "_b" + std::to_string(i + 1) + ".csv", figures, "bootstrap_band", region,
                     {{"block", partition.blocks[i].label()}, {"b_samples", config.b_samples}, {"level", config.level}},
                     options.seed, 0},
                    band_csv(bands.back()));
        }
        out.write({stem + "_variance.csv", figures, "bootstrap_variance", region,
                   {{"b_samples", config.b_samples}}, std::nullopt, 0},
                  grid_table_csv(variances));

        json disjoint = json::object();
        if (bands.size() >= 2) {
          std::vector<GridFunction> overlaps;
          for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
            overlaps.push_back(band_overlap(bands[i], bands[i + 1]));
            disjoint[overlaps.back().label] = disjoint_fraction(overlaps.back());
          }
          out.write({stem + "_overlap.csv", figures, "band_overlap", region, {{"level", config.level}},
                     std::nullopt, 0},
                    grid_table_csv(overlaps));
        }
        band_summary[t ? "t" + std::to_string(t) : "custom"] = {{"blocks", partition.sizes()},
                                                               {"disjoint_fraction", disjoint}};
        svg(stem + ".svg", figures, region,
            band_figure(bands, "95% bootstrap bands, " + std::to_string(bands.size()) + " blocks (" + region + ")"));
      }
      summary["bands"] = band_summary;
    }

    if (config.emits("phase")) {
      stage = "phase";
      const bool arctic = input.region == Region::arctic;
      const std::vector<std::string> figures =
          arctic ? std::vector<std::string>{"fig16a", "fig18", "fig20"} : std::vector<std::string>{"fig16b", "fig19", "fig21"};
      std::vector<PhaseCurve> curves;
      json crossings = json::object();
      for (std::size_t i = 0; i < decades.size(); ++i) {
        const auto label = decade_partition.blocks[i].label();
        curves.push_back(phase_curve(decades[i], label));
        const auto mean = mean_curve(decades[i]);
        crossings[label] = {{"velocity_zeros", zero_crossings(mean, 1, decades[i].grid)},
                            {"acceleration_zeros", zero_crossings(mean, 2, decades[i].grid)}};
        const std::string stem = "phase_" + region + "_d" + std::to_string(i + 1);
        out.write({stem + ".csv", figures, "phase_curve", region, {{"block", label}}, std::nullopt, 0},
                  phase_curve_csv(curves.back()));
        out.write({stem + "_anchors.json", figures, "phase_curve", region, {{"block", label}}, std::nullopt, 0},
                  month_anchor_json(curves.back()));
      }
      out.write({"phase_" + region + "_zero_crossings.json", {}, "zero_crossings", region, json::object(),
                 std::nullopt, 0},
                crossings.dump(2) + '\n');
      summary["zero_crossings"] = crossings;
      svg(figures[0] + "_" + region + ".svg", {figures[0]}, region,
          phase_figure(curves, PhaseAxes::area_velocity, "Area vs velocity (" + region + ")"));
      svg(figures[1] + "_" + region + ".svg", {figures[1]}, region,
          phase_figure(curves, PhaseAxes::area_acceleration, "Area vs acceleration (" + region + ")"));
      svg(figures[2] + "_" + region + ".svg", {figures[2]}, region,
          phase_figure(curves, PhaseAxes::velocity_acceleration, "Velocity vs acceleration (" + region + ")"));
    }

    if (config.emits("change") && decade_means.size() >= 2) {
      stage = "change";
      FigureBundle fig{"lines", "Relative change vs first block (" + region + ")", "day of year",
                       config.percent ? "change (%)" : "change (fraction)", {}};
      const std::vector<std::string> colors{"black", "red", "blue", "green"};
      json minima = json::object();
      for (std::size_t j = 1; j < decade_means.size(); ++j) {
        const auto change = percentage_change(decade_means.front(), decade_means[j], config.change_epsilon);
        out.write({"fig22_change_" + region + "_d" + std::to_string(j + 1) + ".csv", {"fig22"}, "percentage_change",
                   region, {{"epsilon", config.change_epsilon}, {"percent", config.percent}}, std::nullopt, 0},
                  change_curve_csv(change, config.percent));
        PlotSeries s{decade_means[j].label + " vs " + decade_means[0].label, colors[(j - 1) % colors.size()],
                     LineStyle::solid, {}, {}, {}};
        double lowest = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < change.grid.size(); ++d) {
          if (!change.defined[d]) continue;
          s.x.push_back(change.grid[d]);
          s.y.push_back(config.percent ? 100.0 * change.values[d] : change.values[d]);
          lowest = std::min(lowest, change.values[d]);
        }
        minima[s.label] = std::isfinite(lowest) ? json(lowest) : json(nullptr);
        fig.series.push_back(std::move(s));
      }
      summary["change_minimum"] = minima;
      svg("fig22_" + region + ".svg", {"fig22"}, region, fig);
    }
  }
};

}  // namespace

bool RunConfig::emits(std::string_view family) const {
  return std::find(emit.begin(), emit.end(), family) != emit.end();
}

void RunConfig::validate() const {
  if (inputs.empty()) throw ConfigError("no inputs configured");
  std::set<Region> seen;
  for (const auto& in : inputs) {
    if (in.path.empty()) throw ConfigError("input path is empty");
    if (!seen.insert(in.region).second) throw ConfigError("region listed twice: " + std::string(region_name(in.region)));
  }
  if (first_year && last_year && *first_year > *last_year) throw ConfigError("first_year is after last_year");
  if (basis_count < 0 || (basis_count != 0 && basis_count % 2 == 0))
    throw ConfigError("basis_count must be odd (or 0 to select automatically)");
  if (p_values.size() < 3) throw ConfigError("p_values needs at least three entries");
  for (std::size_t i = 0; i < p_values.size(); ++i)
    if (p_values[i] < 1 || p_values[i] % 2 == 0 || (i && p_values[i] <= p_values[i - 1]))
      throw ConfigError("p_values must be strictly increasing odd integers");
  if (!(flatness_tol >= 0.0)) throw ConfigError("flatness_tol must be non-negative");
  if (!(period > 0.0)) throw ConfigError("period must be positive");
  if (decade_blocks < 1) throw ConfigError("decade_blocks must be positive");
  for (int t : block_counts)
    if (t < 1) throw ConfigError("block counts must be positive");
  for (std::size_t i = 0; i < explicit_blocks.size(); ++i) {
    if (explicit_blocks[i].last < explicit_blocks[i].first) throw ConfigError("explicit block ends before it starts");
    if (i && explicit_blocks[i].first != explicit_blocks[i - 1].last + 1)
      throw ConfigError("explicit blocks must be contiguous");
  }
  if (b_samples < 1) throw ConfigError("b_samples must be at least 1");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must lie in (0, 1)");
  if (!(change_epsilon >= 0.0)) throw ConfigError("change_epsilon must be non-negative");
  if (extrema_radius < 0) throw ConfigError("extrema_radius must be non-negative");
  for (const auto& e : emit)
    if (std::find(kEmitFamilies.begin(), kEmitFamilies.end(), e) == kEmitFamilies.end())
      throw ConfigError("unknown emit family '" + e + "'");
}

std::string RunConfig::to_json() const {
  json inputs_json = json::array();
  for (const auto& in : inputs) inputs_json.push_back({{"region", region_name(in.region)}, {"path", in.path}});
  json blocks = json::array();
  for (const auto& b : explicit_blocks) blocks.push_back({b.first, b.last});
  return json{{"inputs", inputs_json},
              {"first_year", first_year ? json(*first_year) : json(nullptr)},
              {"last_year", last_year ? json(*last_year) : json(nullptr)},
              {"basis_count", basis_count},
              {"p_values", p_values},
              {"flatness_tol", flatness_tol},
              {"period", period},
              {"decade_blocks", decade_blocks},
              {"decade_preset", partition_preset_name(decade_preset)},
              {"block_counts", block_counts},
              {"band_preset", partition_preset_name(band_preset)},
              {"explicit_blocks", blocks},
              {"b_samples", b_samples},
              {"level", level},
              {"seed", seed},
              {"parallelism", parallelism},
              {"change_epsilon", change_epsilon},
              {"percent", percent},
              {"extrema_radius", extrema_radius},
              {"output_dir", output_dir},
              {"emit", emit},
              {"svg", svg}}
      .dump(2);
}

RunConfig RunConfig::from_json(std::string_view text) {
  RunConfig config;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    for (const auto& [key, value] : doc.items())
      if (!kConfigKeys.contains(key)) throw ConfigError("unknown configuration key '" + key + "'");

    if (doc.contains("inputs")) {
      config.inputs.clear();
      for (const auto& in : doc.at("inputs"))
        config.inputs.push_back({parse_region(in.at("region").get<std::string>()), in.at("path").get<std::string>()});
    }
    read_optional(doc, "first_year", config.first_year);
    read_optional(doc, "last_year", config.last_year);
    read_key(doc, "basis_count", config.basis_count);
    read_key(doc, "p_values", config.p_values);
    read_key(doc, "flatness_tol", config.flatness_tol);
    read_key(doc, "period", config.period);
    read_key(doc, "decade_blocks", config.decade_blocks);
    if (doc.contains("decade_preset"))
      config.decade_preset = parse_partition_preset(doc.at("decade_preset").get<std::string>());
    read_key(doc, "block_counts", config.block_counts);
    if (doc.contains("band_preset"))
      config.band_preset = parse_partition_preset(doc.at("band_preset").get<std::string>());
    if (doc.contains("explicit_blocks")) {
      config.explicit_blocks.clear();
      for (const auto& b : doc.at("explicit_blocks")) {
        const auto pair = b.get<std::vector<int>>();
        if (pair.size() != 2) throw ConfigError("explicit blocks are [first_year, last_year] pairs");
        config.explicit_blocks.push_back({pair[0], pair[1]});
      }
    }
    read_key(doc, "b_samples", config.b_samples);
    read_key(doc, "level", config.level);
    read_key(doc, "seed", config.seed);
    read_key(doc, "parallelism", config.parallelism);
    read_key(doc, "change_epsilon", config.change_epsilon);
    read_key(doc, "percent", config.percent);
    read_key(doc, "extrema_radius", config.extrema_radius);
    read_key(doc, "output_dir", config.output_dir);
    read_key(doc, "emit", config.emit);
    read_key(doc, "svg", config.svg);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  return config;
}

RunResult run_pipeline(const RunConfig& config) {
  config.validate();
  const auto dir = resolve_output_dir(config);
  prepare_output_dir(dir);

  OutputWriter out(dir);
  std::string stage = "setup";
  json summaries = json::object();
  auto write_manifest = [&](bool complete, const json& error) {
    const auto text = manifest_json(config, out.records(), complete, error, summaries).dump(2) + '\n';
    std::ofstream file(dir / kManifestName, std::ios::binary | std::ios::trunc);
    file << text;
    return text;
  };

  try {
    RegionRun runner{config, out, stage, summaries};
    for (const auto& input : config.inputs) runner.run(input);
  } catch (const Error& e) {
    write_manifest(false, {{"stage", stage}, {"message", e.what()}});
    throw PipelineError(e.kind(), stage, e.what());
  } catch (const std::exception& e) {
    write_manifest(false, {{"stage", stage}, {"message", e.what()}});
    throw PipelineError(ErrorKind::numeric, stage, e.what());
  }

  RunResult result;
  result.output_dir = dir;
  result.manifest_json = write_manifest(true, nullptr);
  for (const auto& r : out.records()) result.files.push_back(r.path);
  return result;
}

}  // namespace fdband
