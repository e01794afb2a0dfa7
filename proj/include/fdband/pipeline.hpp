// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/bootstrap_bands.hpp"
#include "fdband/curve_stats.hpp"
#include "fdband/error.hpp"
#include "fdband/ingest.hpp"
#include "fdband/smoother.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fdband {

inline constexpr const char* kOutputDirEnv = "FDBAND_OUTPUT_DIR";

/// Output families, in pipeline order.
inline const std::vector<std::string> kEmitFamilies{"raw", "smooth", "mse_profile", "stats",
                                                     "bands", "phase", "change"};

struct RegionInput {
  Region region = Region::arctic;
  std::string path;
};

struct RunConfig {
  std::vector<RegionInput> inputs;
  std::optional<int> first_year;
  std::optional<int> last_year;

  int basis_count = 21;  // 0: use the count chosen by select_basis_count
  std::vector<int> p_values = odd_values(1, 51);
  double flatness_tol = kDefaultFlatnessTol;
  double period = kDaysPerYear;

  int decade_blocks = 3;
  PartitionPreset decade_preset = PartitionPreset::decades;
  std::vector<int> block_counts{2, 3, 4, 5};
  PartitionPreset band_preset = PartitionPreset::bands;
  std::vector<YearRange> explicit_blocks;  // replaces block_counts when non-empty

  std::size_t b_samples = kDefaultBootstrapSamples;
  double level = kDefaultBandLevel;
  std::uint64_t seed = 20170101;
  unsigned parallelism = 0;

  double change_epsilon = 1e-6;
  bool percent = false;
  int extrema_radius = 2;

  std::string output_dir;  // empty: $FDBAND_OUTPUT_DIR
  std::vector<std::string> emit = kEmitFamilies;
  bool svg = false;

  /// Throws ConfigError.
  void validate() const;
  bool emits(std::string_view family) const;

  std::string to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected. Throws ConfigError.
  static RunConfig from_json(std::string_view text);
};

/// Pipeline failure tagged with the stage that raised it.
class PipelineError : public Error {
 public:
  PipelineError(ErrorKind kind, std::string stage, const std::string& what)
      : Error(kind, stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct RunResult {
  std::filesystem::path output_dir;
  std::string manifest_json;
  std::vector<std::string> files;  // relative to output_dir, manifest excluded
};

/// Runs ingest -> smooth -> stats -> bands -> phase -> change for every
/// input and writes the requested families plus manifest.json. On failure
/// the manifest is still written with "complete": false and the error, then
/// a PipelineError is thrown.
RunResult run_pipeline(const RunConfig& config);

}  // namespace fdband
