// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdband {

enum class Region { arctic, antarctic };

std::string_view region_name(Region region) noexcept;
/// Accepts "arctic" / "antarctic" (case-insensitive); throws ArgumentError otherwise.
Region parse_region(std::string_view name);

struct Sample {
  int day;      // 1..365 after the leap-day drop
  double area;  // million km^2
};

struct RawYearSeries {
  int year = 0;
  std::vector<Sample> samples;  // strictly increasing days

  std::size_t size() const noexcept { return samples.size(); }
  std::vector<double> days() const;
  std::vector<double> areas() const;
};

struct Dataset {
  Region region = Region::arctic;
  std::vector<RawYearSeries> years;  // contiguous, ascending

  int first_year() const { return years.front().year; }
  int last_year() const { return years.back().year; }
  /// nullptr when the year is absent.
  const RawYearSeries* find(int year) const noexcept;
};

// --- calendar -------------------------------------------------------------

bool is_leap_year(int year) noexcept;
/// Day of year counting Feb 29 (1..366). Throws ArgumentError on invalid dates.
int naive_day_of_year(int year, int month, int day);
/// Maps a naive day of year onto the 365-day domain; nullopt for Feb 29.
std::optional<int> canonical_day(int year, int naive_day) noexcept;
/// Inverse of canonical_day for days that exist.
int naive_from_canonical(int year, int day) noexcept;

// --- canonical CSV (header `year,day,area`, `NA` for missing) ---------------

/// Throws ParseError (with line number), DuplicateEntryError or EmptyDatasetError.
Dataset parse_canonical_csv(std::string_view text, Region region);
Dataset read_canonical_csv(const std::filesystem::path& path, Region region);
std::string write_canonical_csv(const Dataset& dataset);

/// Converts an NSIDC sea ice index daily export (Year, Month, Day, value, ...)
/// into canonical CSV text. Header and unit rows are skipped; negative
/// sentinel values and blanks become `NA`.
std::string convert_nsidc(std::string_view text);

// --- synthetic ensembles -----------------------------------------------------

enum class SamplingPattern { daily, alternate_day };

struct SyntheticConfig {
  std::vector<double> coefficients;    // ground-truth Fourier coefficients, odd length
  std::vector<double> year_offsets;    // one per year; its length sets the year count
  int first_year = 1979;
  double noise_sd = 0.0;
  std::uint64_t seed = 0;
  SamplingPattern pattern = SamplingPattern::daily;
  /// Years before this one use `pattern`; later years are sampled daily.
  /// Unset means every year uses `pattern`.
  std::optional<int> daily_from_year;
  double period = 365.0;
  Region region = Region::arctic;
};

/// Deterministic given the seed; throws ConfigError on invalid settings.
Dataset synthesize_ensemble(const SyntheticConfig& config);

}  // namespace fdband
