// SPDX-License-Identifier: Apache-2.0
// fdband command-line front end. Everything goes through the C API.

#include "fdband/fdband.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

int exit_code(fdband_status status) {
  switch (status) {
    case FDBAND_OK: return 0;
    case FDBAND_ERR_ARGUMENT:
    case FDBAND_ERR_CONFIG: return 2;
    case FDBAND_ERR_INPUT: return 3;
    case FDBAND_ERR_NUMERIC: return 4;
    default: return 1;
  }
}

int fail(fdband_status status, const std::string& context) {
  std::cerr << "fdband: " << context << ": " << fdband_last_error() << '\n';
  return exit_code(status);
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Owns a string allocated by the library.
struct LibString {
  char* ptr = nullptr;
  ~LibString() { fdband_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct PipelineFlags {
  std::string config_path;
  std::string input;
  std::string region = "arctic";
  std::string arctic;
  std::string antarctic;
  std::string out;
  std::optional<int> first_year;
  std::optional<int> last_year;
  std::optional<int> basis_count;
  bool auto_basis = false;
  std::optional<int> p_max;
  std::optional<double> tol;
  std::vector<int> block_counts;
  std::string band_preset;
  std::vector<std::string> blocks;  // "1979-1996"
  std::optional<std::size_t> b_samples;
  std::optional<double> level;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool svg = false;
  bool percent = false;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration (flags override it)");
  cmd->add_option("-i,--input", f.input, "canonical CSV for a single region");
  cmd->add_option("--region", f.region, "region of --input")->check(CLI::IsMember({"arctic", "antarctic"}));
  cmd->add_option("--arctic", f.arctic, "canonical CSV for the Arctic");
  cmd->add_option("--antarctic", f.antarctic, "canonical CSV for the Antarctic");
  cmd->add_option("-o,--out", f.out, "output directory (default $FDBAND_OUTPUT_DIR)");
  cmd->add_option("--first-year", f.first_year);
  cmd->add_option("--last-year", f.last_year);
  cmd->add_option("-p,--basis-count", f.basis_count, "odd number of Fourier basis functions");
  cmd->add_flag("--auto-basis", f.auto_basis, "use the basis count chosen from the MSE profile");
  cmd->add_option("--p-max", f.p_max, "largest odd basis count in the MSE profile");
  cmd->add_option("--tol", f.tol, "flatness tolerance for basis selection");
  cmd->add_option("-t,--blocks-count", f.block_counts, "block counts for bands (repeatable)");
  cmd->add_option("--band-preset", f.band_preset)->check(CLI::IsMember({"balanced", "decades", "bands"}));
  cmd->add_option("--block", f.blocks, "explicit block FIRST-LAST (repeatable, contiguous)");
  cmd->add_option("-B,--bootstrap", f.b_samples, "bootstrap replicates");
  cmd->add_option("--level", f.level, "band coverage level");
  cmd->add_option("--seed", f.seed);
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--svg", f.svg, "also write SVG plots");
  cmd->add_flag("--percent", f.percent, "report change curves in percent");
}

/// Returns the merged configuration or throws std::runtime_error.
json build_config(const PipelineFlags& f, const std::vector<std::string>& emit) {
  json config;
  if (!f.config_path.empty()) {
    const auto text = read_file(f.config_path);
    if (!text) throw std::runtime_error("cannot read " + f.config_path);
    config = json::parse(*text);
  } else {
    LibString defaults;
    if (fdband_default_config(&defaults.ptr) != FDBAND_OK) throw std::runtime_error(fdband_last_error());
    config = json::parse(defaults.str());
  }

  json inputs = json::array();
  if (!f.input.empty()) inputs.push_back({{"region", f.region}, {"path", f.input}});
  if (!f.arctic.empty()) inputs.push_back({{"region", "arctic"}, {"path", f.arctic}});
  if (!f.antarctic.empty()) inputs.push_back({{"region", "antarctic"}, {"path", f.antarctic}});
  if (!inputs.empty()) config["inputs"] = inputs;

  if (!f.out.empty()) config["output_dir"] = f.out;
  if (f.first_year) config["first_year"] = *f.first_year;
  if (f.last_year) config["last_year"] = *f.last_year;
  if (f.basis_count) config["basis_count"] = *f.basis_count;
  if (f.auto_basis) config["basis_count"] = 0;
  if (f.p_max) {
    std::vector<int> ps;
    for (int p = 1; p <= *f.p_max; p += 2) ps.push_back(p);
    config["p_values"] = ps;
  }
  if (f.tol) config["flatness_tol"] = *f.tol;
  if (!f.block_counts.empty()) config["block_counts"] = f.block_counts;
  if (!f.band_preset.empty()) config["band_preset"] = f.band_preset;
  if (!f.blocks.empty()) {
    json blocks = json::array();
    for (const auto& b : f.blocks) {
      int first = 0;
      int last = 0;
      if (std::sscanf(b.c_str(), "%d-%d", &first, &last) != 2)
        throw std::runtime_error("--block expects FIRST-LAST, got '" + b + "'");
      blocks.push_back({first, last});
    }
    config["explicit_blocks"] = blocks;
  }
  if (f.b_samples) config["b_samples"] = *f.b_samples;
  if (f.level) config["level"] = *f.level;
  if (f.seed) config["seed"] = *f.seed;
  if (f.threads) config["parallelism"] = *f.threads;
  if (f.svg) config["svg"] = true;
  if (f.percent) config["percent"] = true;
  if (!emit.empty()) config["emit"] = emit;
  return config;
}

int run_pipeline_command(const PipelineFlags& flags, const std::vector<std::string>& emit) {
  json config;
  try {
    config = build_config(flags, emit);
  } catch (const std::exception& e) {
    std::cerr << "fdband: configuration: " << e.what() << '\n';
    return 2;
  }
  LibString manifest;
  if (auto status = fdband_run_pipeline(config.dump().c_str(), &manifest.ptr); status != FDBAND_OK)
    return fail(status, "pipeline");

  const auto doc = json::parse(manifest.str());
  std::cout << "wrote " << doc["files"].size() << " files";
  if (const auto& dir = doc["config"]["output_dir"]; dir.is_string() && !dir.get<std::string>().empty())
    std::cout << " to " << dir.get<std::string>();
  std::cout << '\n';
  for (const auto& [region, summary] : doc["summaries"].items()) {
    std::cout << region << ": basis_count=" << summary.value("basis_count", 0);
    if (summary.contains("basis_selection"))
      std::cout << " selected=" << summary["basis_selection"]["selected"]
                << (summary["basis_selection"]["converged"].get<bool>() ? "" : " (not converged)");
    std::cout << '\n';
  }
  return 0;
}

struct SynthFlags {
  std::string out;
  std::string region = "arctic";
  int years = 37;
  int first_year = 1979;
  double noise = 0.15;
  double trend = -0.03;
  double year_sd = 0.2;
  std::uint64_t seed = 1;
  int alternate_until = 1987;
};

/// Annual cycle: mean level plus first and second harmonics with the peak on
/// `peak_day`.
std::vector<double> seasonal_coefficients(double mean, double amplitude, double second, double peak_day) {
  const double w = 2.0 * std::numbers::pi / 365.0;
  return {mean, amplitude * std::sin(w * peak_day), amplitude * std::cos(w * peak_day),
          second * std::sin(2 * w * peak_day), second * std::cos(2 * w * peak_day)};
}

int run_synth(const SynthFlags& f) {
  const bool arctic = f.region == "arctic";
  json config;
  config["coefficients"] = arctic ? seasonal_coefficients(11.5, 4.6, 0.6, 66) : seasonal_coefficients(11.76, 7.6, 0.8, 267);
  std::vector<double> offsets;
  std::uint64_t state = f.seed;
  for (int i = 0; i < f.years; ++i) {
    // small deterministic year-to-year scatter around the trend
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double u = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    offsets.push_back(f.trend * i + f.year_sd * 2.0 * u);
  }
  config["year_offsets"] = offsets;
  config["first_year"] = f.first_year;
  config["noise_sd"] = f.noise;
  config["seed"] = f.seed;
  config["pattern"] = f.alternate_until >= f.first_year ? "alternate_day" : "daily";
  config["daily_from_year"] = f.alternate_until + 1;
  config["region"] = f.region;

  fdband_dataset* dataset = nullptr;
  if (auto status = fdband_dataset_synthesize(config.dump().c_str(), &dataset); status != FDBAND_OK)
    return fail(status, "synth");
  const auto status = fdband_dataset_write(dataset, f.out.c_str());
  fdband_dataset_free(dataset);
  if (status != FDBAND_OK) return fail(status, "synth");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdband: Fourier smoothing, bootstrap bands and phase-plane analysis of daily series"};
  app.set_version_flag("--version", std::string(fdband_version()));
  app.require_subcommand(1);

  std::string nsidc_in;
  std::string nsidc_out;
  auto* convert = app.add_subcommand("convert-nsidc", "convert an NSIDC daily export to canonical CSV");
  convert->add_option("input", nsidc_in)->required();
  convert->add_option("output", nsidc_out)->required();

  SynthFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "write a synthetic canonical CSV");
  synth->add_option("-o,--out", synth_flags.out)->required();
  synth->add_option("--region", synth_flags.region)->check(CLI::IsMember({"arctic", "antarctic"}));
  synth->add_option("--years", synth_flags.years)->check(CLI::PositiveNumber);
  synth->add_option("--first-year", synth_flags.first_year);
  synth->add_option("--noise", synth_flags.noise, "observation noise SD");
  synth->add_option("--trend", synth_flags.trend, "level change per year");
  synth->add_option("--year-sd", synth_flags.year_sd, "year-to-year level scatter");
  synth->add_option("--seed", synth_flags.seed);
  synth->add_option("--alternate-until", synth_flags.alternate_until, "last year sampled on alternate days");

  const std::map<std::string, std::pair<std::string, std::vector<std::string>>> pipeline_commands{
      {"smooth", {"fit per-year Fourier curves", {"raw", "smooth"}}},
      {"select-basis", {"MSE profile and basis-count selection", {"mse_profile"}}},
      {"stats", {"mean, variance and extrema summaries", {"stats"}}},
      {"bands", {"percentile bootstrap confidence bands", {"bands"}}},
      {"phase", {"phase-plane curves of block means", {"phase"}}},
      {"change", {"relative change against the first block", {"change"}}},
      {"report", {"full pipeline", {}}},
  };
  std::map<std::string, PipelineFlags> flags;
  std::map<std::string, CLI::App*> commands;
  for (const auto& [name, entry] : pipeline_commands) {
    commands[name] = app.add_subcommand(name, entry.first);
    add_pipeline_flags(commands[name], flags[name]);
  }

  std::string bundle_path;
  std::string svg_path;
  auto* plot = app.add_subcommand("plot", "render a figure bundle (JSON) as SVG");
  plot->add_option("bundle", bundle_path)->required();
  plot->add_option("output", svg_path)->required();

  auto* config_cmd = app.add_subcommand("config", "print the default run configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (convert->parsed()) {
    const auto status = fdband_convert_nsidc(nsidc_in.c_str(), nsidc_out.c_str());
    return status == FDBAND_OK ? 0 : fail(status, "convert-nsidc");
  }
  if (synth->parsed()) return run_synth(synth_flags);
  if (plot->parsed()) {
    const auto bundle = read_file(bundle_path);
    if (!bundle) {
      std::cerr << "fdband: plot: cannot read " << bundle_path << '\n';
      return 3;
    }
    LibString svg;
    if (auto status = fdband_render_svg(bundle->c_str(), &svg.ptr); status != FDBAND_OK) return fail(status, "plot");
    std::ofstream out(svg_path, std::ios::binary | std::ios::trunc);
    out << svg.str();
    return out ? 0 : 2;
  }
  if (config_cmd->parsed()) {
    LibString config;
    if (auto status = fdband_default_config(&config.ptr); status != FDBAND_OK) return fail(status, "config");
    std::cout << config.str() << '\n';
    return 0;
  }
  for (const auto& [name, cmd] : commands)
    if (cmd->parsed()) return run_pipeline_command(flags[name], pipeline_commands.at(name).second);
  return 2;
}
