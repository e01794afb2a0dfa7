// SPDX-License-Identifier: Apache-2.0
#include "fdband/fdband.h"

#include "fdband/bootstrap_bands.hpp"
#include "fdband/ingest.hpp"
#include "fdband/pipeline.hpp"
#include "fdband/serialize.hpp"
#include "fdband/smoother.hpp"
#include "fdband/svg.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

struct fdband_dataset {
  fdband::Dataset value;
};

struct fdband_ensemble {
  fdband::CurveEnsemble value;
};

struct fdband_band {
  fdband::ConfidenceBand value;
};

namespace {

thread_local std::string g_last_error;

fdband_status status_for(fdband::ErrorKind kind) {
  switch (kind) {
    case fdband::ErrorKind::argument: return FDBAND_ERR_ARGUMENT;
    case fdband::ErrorKind::config: return FDBAND_ERR_CONFIG;
    case fdband::ErrorKind::input: return FDBAND_ERR_INPUT;
    case fdband::ErrorKind::numeric: return FDBAND_ERR_NUMERIC;
  }
  return FDBAND_ERR_INTERNAL;
}

template <typename F>
fdband_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return FDBAND_OK;
  } catch (const fdband::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FDBAND_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FDBAND_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw fdband::ArgumentError(what);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fdband::SyntheticConfig synthetic_from_json(const char* text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(text);
    fdband::SyntheticConfig c;
    c.coefficients = doc.at("coefficients").get<std::vector<double>>();
    c.year_offsets = doc.at("year_offsets").get<std::vector<double>>();
    c.first_year = doc.value("first_year", c.first_year);
    c.noise_sd = doc.value("noise_sd", c.noise_sd);
    c.seed = doc.value("seed", c.seed);
    const auto pattern = doc.value("pattern", std::string("daily"));
    if (pattern == "daily")
      c.pattern = fdband::SamplingPattern::daily;
    else if (pattern == "alternate_day")
      c.pattern = fdband::SamplingPattern::alternate_day;
    else
      throw fdband::ConfigError("unknown sampling pattern '" + pattern + "'");
    if (doc.contains("daily_from_year") && !doc.at("daily_from_year").is_null())
      c.daily_from_year = doc.at("daily_from_year").get<int>();
    c.period = doc.value("period", c.period);
    c.region = fdband::parse_region(doc.value("region", std::string("arctic")));
    return c;
  } catch (const json::exception& e) {
    throw fdband::ConfigError(std::string("invalid synthetic configuration: ") + e.what());
  } catch (const fdband::ArgumentError& e) {
    throw fdband::ConfigError(e.what());
  }
}

}  // namespace

extern "C" {

const char* fdband_version(void) { return "1.0.0"; }

const char* fdband_last_error(void) { return g_last_error.c_str(); }

void fdband_string_free(char* s) { std::free(s); }

fdband_status fdband_dataset_load(const char* path, const char* region, fdband_dataset** out) {
  return guarded([&] {
    require(path && region && out, "null argument");
    *out = new fdband_dataset{fdband::read_canonical_csv(path, fdband::parse_region(region))};
  });
}

fdband_status fdband_dataset_parse(const char* text, size_t length, const char* region, fdband_dataset** out) {
  return guarded([&] {
    require((text || length == 0) && region && out, "null argument");
    *out = new fdband_dataset{
        fdband::parse_canonical_csv(std::string_view(text ? text : "", length), fdband::parse_region(region))};
  });
}

fdband_status fdband_dataset_synthesize(const char* config_json, fdband_dataset** out) {
  return guarded([&] {
    require(config_json && out, "null argument");
    *out = new fdband_dataset{fdband::synthesize_ensemble(synthetic_from_json(config_json))};
  });
}

void fdband_dataset_free(fdband_dataset* dataset) { delete dataset; }

size_t fdband_dataset_year_count(const fdband_dataset* dataset) {
  return dataset ? dataset->value.years.size() : 0;
}

fdband_status fdband_dataset_year(const fdband_dataset* dataset, size_t index, int* year, size_t* sample_count) {
  return guarded([&] {
    require(dataset, "null dataset");
    require(index < dataset->value.years.size(), "year index out of range");
    const auto& series = dataset->value.years[index];
    if (year) *year = series.year;
    if (sample_count) *sample_count = series.size();
  });
}

fdband_status fdband_dataset_samples(const fdband_dataset* dataset, size_t index, int* days, double* areas,
                                     size_t capacity) {
  return guarded([&] {
    require(dataset, "null dataset");
    require(index < dataset->value.years.size(), "year index out of range");
    const auto& samples = dataset->value.years[index].samples;
    for (size_t i = 0; i < samples.size() && i < capacity; ++i) {
      if (days) days[i] = samples[i].day;
      if (areas) areas[i] = samples[i].area;
    }
  });
}

fdband_status fdband_dataset_write(const fdband_dataset* dataset, const char* path) {
  return guarded([&] {
    require(dataset && path, "null argument");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << fdband::write_canonical_csv(dataset->value);
    if (!out) throw fdband::ConfigError(std::string("cannot write ") + path);
  });
}

fdband_status fdband_convert_nsidc(const char* in_path, const char* out_path) {
  return guarded([&] {
    require(in_path && out_path, "null argument");
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw fdband::ParseError(std::string("cannot open ") + in_path);
    std::ostringstream text;
    text << in.rdbuf();
    const auto csv = fdband::convert_nsidc(text.str());
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << csv;
    if (!out) throw fdband::ConfigError(std::string("cannot write ") + out_path);
  });
}

fdband_status fdband_smooth(const fdband_dataset* dataset, int basis_count, double period, fdband_ensemble** out) {
  return guarded([&] {
    require(dataset && out, "null argument");
    const fdband::FourierBasis basis(basis_count, period);
    *out = new fdband_ensemble{fdband::smooth_dataset(dataset->value, basis)};
  });
}

void fdband_ensemble_free(fdband_ensemble* ensemble) { delete ensemble; }

size_t fdband_ensemble_size(const fdband_ensemble* ensemble) { return ensemble ? ensemble->value.size() : 0; }

int fdband_ensemble_basis_count(const fdband_ensemble* ensemble) {
  return ensemble ? ensemble->value.basis.count() : 0;
}

fdband_status fdband_ensemble_coefficients(const fdband_ensemble* ensemble, size_t index, int* year,
                                           double* coefficients, size_t capacity) {
  return guarded([&] {
    require(ensemble, "null ensemble");
    require(index < ensemble->value.size(), "curve index out of range");
    const auto& curve = ensemble->value.curves[index];
    if (year) *year = curve.year();
    const auto& c = curve.coefficients();
    for (size_t k = 0; k < c.size() && k < capacity && coefficients; ++k) coefficients[k] = c[k];
  });
}

fdband_status fdband_ensemble_evaluate(const fdband_ensemble* ensemble, size_t index, const double* days, size_t n,
                                       int deriv, double* values) {
  return guarded([&] {
    require(ensemble && (days || n == 0) && (values || n == 0), "null argument");
    require(index < ensemble->value.size(), "curve index out of range");
    const auto& curve = ensemble->value.curves[index];
    for (size_t i = 0; i < n; ++i) values[i] = curve.evaluate(days[i], deriv);
  });
}

fdband_status fdband_select_basis(const fdband_dataset* dataset, const int* p_values, size_t n_p, double period,
                                  double flatness_tol, double* mse_hat, int* selected, int* converged) {
  return guarded([&] {
    require(dataset && p_values && n_p > 0, "null argument");
    const auto profile = fdband::mse_profile(dataset->value, std::span<const int>(p_values, n_p), period);
    const auto selection = fdband::select_basis_count(profile, flatness_tol);
    if (mse_hat)
      for (size_t i = 0; i < profile.mse_hat.size(); ++i) mse_hat[i] = profile.mse_hat[i];
    if (selected) *selected = selection.basis_count;
    if (converged) *converged = selection.converged ? 1 : 0;
  });
}

fdband_status fdband_bootstrap_band(const fdband_ensemble* ensemble, int first_year, int last_year,
                                    size_t b_samples, double level, uint64_t seed, unsigned parallelism,
                                    fdband_band** out) {
  return guarded([&] {
    require(ensemble && out, "null argument");
    fdband::CurveEnsemble block;
    block.basis = ensemble->value.basis;
    block.grid = ensemble->value.grid;
    for (const auto& curve : ensemble->value.curves)
      if (curve.year() >= first_year && curve.year() <= last_year) block.curves.push_back(curve);
    fdband::BootstrapOptions options{b_samples, level, seed, parallelism};
    *out = new fdband_band{fdband::bootstrap_band(block, options)};
  });
}

void fdband_band_free(fdband_band* band) { delete band; }

size_t fdband_band_size(const fdband_band* band) { return band ? band->value.grid.size() : 0; }

fdband_status fdband_band_values(const fdband_band* band, double* days, double* lower, double* center,
                                 double* upper, size_t capacity) {
  return guarded([&] {
    require(band, "null band");
    const auto& b = band->value;
    for (size_t j = 0; j < b.grid.size() && j < capacity; ++j) {
      if (days) days[j] = b.grid[j];
      if (lower) lower[j] = b.lower[j];
      if (center) center[j] = b.center[j];
      if (upper) upper[j] = b.upper[j];
    }
  });
}

fdband_status fdband_band_csv(const fdband_band* band, char** csv_out) {
  return guarded([&] {
    require(band && csv_out, "null argument");
    *csv_out = copy_string(fdband::band_csv(band->value));
  });
}

fdband_status fdband_run_pipeline(const char* config_json, char** manifest_out) {
  return guarded([&] {
    require(config_json, "null configuration");
    const auto result = fdband::run_pipeline(fdband::RunConfig::from_json(config_json));
    if (manifest_out) *manifest_out = copy_string(result.manifest_json);
  });
}

fdband_status fdband_default_config(char** config_out) {
  return guarded([&] {
    require(config_out, "null argument");
    *config_out = copy_string(fdband::RunConfig{}.to_json());
  });
}

fdband_status fdband_render_svg(const char* bundle_json, char** svg_out) {
  return guarded([&] {
    require(bundle_json && svg_out, "null argument");
    *svg_out = copy_string(fdband::emit_svg(fdband::parse_figure_bundle(bundle_json)));
  });
}

}  // extern "C"
