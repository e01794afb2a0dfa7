// SPDX-License-Identifier: Apache-2.0
#include "fdband/ingest.hpp"

#include "fdband/error.hpp"
#include "fdband/fourier_basis.hpp"
#include "fdband/rng.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace fdband {

namespace {

constexpr std::array<int, 12> kDaysInMonth{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
constexpr int kFeb29 = 60;  // naive day of year in leap years

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view region_name(Region region) noexcept {
  return region == Region::arctic ? "arctic" : "antarctic";
}

Region parse_region(std::string_view name) {
  if (iequals(name, "arctic")) return Region::arctic;
  if (iequals(name, "antarctic")) return Region::antarctic;
  throw ArgumentError("unknown region '" + std::string(name) + "'");
}

std::vector<double> RawYearSeries::days() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.day);
  return out;
}

std::vector<double> RawYearSeries::areas() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.area);
  return out;
}

const RawYearSeries* Dataset::find(int year) const noexcept {
  for (const auto& y : years)
    if (y.year == year) return &y;
  return nullptr;
}

bool is_leap_year(int year) noexcept {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int naive_day_of_year(int year, int month, int day) {
  if (month < 1 || month > 12) throw ArgumentError("month out of range: " + std::to_string(month));
  int length = kDaysInMonth[month - 1] + (month == 2 && is_leap_year(year) ? 1 : 0);
  if (day < 1 || day > length) throw ArgumentError("day out of range: " + std::to_string(day));
  int doy = day;
  for (int m = 1; m < month; ++m) doy += kDaysInMonth[m - 1] + (m == 2 && is_leap_year(year) ? 1 : 0);
  return doy;
}

std::optional<int> canonical_day(int year, int naive_day) noexcept {
  if (!is_leap_year(year) || naive_day < kFeb29) return naive_day;
  if (naive_day == kFeb29) return std::nullopt;
  return naive_day - 1;
}

int naive_from_canonical(int year, int day) noexcept {
  return is_leap_year(year) && day >= kFeb29 ? day + 1 : day;
}

Dataset parse_canonical_csv(std::string_view text, Region region) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const auto rows = detail::lines(text);

  std::size_t line_no = 0;
  while (line_no < rows.size() && detail::trim(rows[line_no]).empty()) ++line_no;
  if (line_no == rows.size()) throw EmptyDatasetError();

  {
    auto header = detail::split(rows[line_no], ',');
    if (header.size() != 3 || detail::trim(header[0]) != "year" || detail::trim(header[1]) != "day" ||
        detail::trim(header[2]) != "area")
      throw ParseError("expected header 'year,day,area'", line_no + 1);
  }

  // year -> naive day -> area (nullopt for NA)
  std::map<int, std::map<int, std::optional<double>>> cells;
  std::size_t data_rows = 0;
  for (++line_no; line_no < rows.size(); ++line_no) {
    const std::size_t human = line_no + 1;
    if (detail::trim(rows[line_no]).empty()) continue;
    const auto fields = detail::split(rows[line_no], ',');
    if (fields.size() != 3)
      throw ParseError("expected 3 columns, found " + std::to_string(fields.size()), human);

    const auto year = detail::parse_int(fields[0]);
    if (!year) throw ParseError("non-integer year '" + std::string(fields[0]) + "'", human);
    const auto day = detail::parse_int(fields[1]);
    if (!day) throw ParseError("non-integer day '" + std::string(fields[1]) + "'", human);
    const int max_day = is_leap_year(static_cast<int>(*year)) ? 366 : 365;
    if (*day < 1 || *day > max_day)
      throw ParseError("day " + std::to_string(*day) + " out of range for " + std::to_string(*year), human);

    std::optional<double> area;
    const auto area_text = detail::trim(fields[2]);
    if (area_text != "NA") {
      area = detail::parse_double(area_text);
      if (!area || !std::isfinite(*area) || *area < 0.0)
        throw ParseError("invalid area '" + std::string(area_text) + "'", human);
    }

    auto& year_cells = cells[static_cast<int>(*year)];
    if (!year_cells.emplace(static_cast<int>(*day), area).second)
      throw DuplicateEntryError("duplicate entry for year " + std::to_string(*year) + " day " +
                                    std::to_string(*day),
                                human);
    ++data_rows;
  }
  if (data_rows == 0) throw EmptyDatasetError();

  Dataset out;
  out.region = region;
  for (const auto& [year, days] : cells) {
    if (!out.years.empty() && year != out.years.back().year + 1)
      throw ParseError("years are not contiguous: " + std::to_string(out.years.back().year) + " then " +
                       std::to_string(year));
    RawYearSeries series;
    series.year = year;
    for (const auto& [naive, area] : days) {
      if (!area) continue;
      if (auto day = canonical_day(year, naive)) series.samples.push_back({*day, *area});
    }
    out.years.push_back(std::move(series));
  }
  return out;
}

Dataset read_canonical_csv(const std::filesystem::path& path, Region region) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_canonical_csv(buf.str(), region);
}

std::string write_canonical_csv(const Dataset& dataset) {
  std::string out = "year,day,area\n";
  for (const auto& series : dataset.years) {
    const std::string year = std::to_string(series.year);
    for (const auto& s : series.samples) {
      out += year;
      out += ',';
      out += std::to_string(naive_from_canonical(series.year, s.day));
      out += ',';
      out += detail::format_double(s.area);
      out += '\n';
    }
  }
  return out;
}

std::string convert_nsidc(std::string_view text) {
  std::string out = "year,day,area\n";
  std::size_t line_no = 0;
  std::size_t rows = 0;
  for (auto line : detail::lines(text)) {
    ++line_no;
    const auto fields = detail::split(line, ',');
    if (fields.size() < 4) continue;
    const auto year = detail::parse_int(fields[0]);
    const auto month = detail::parse_int(fields[1]);
    const auto day = detail::parse_int(fields[2]);
    if (!year || !month || !day) continue;  // header / unit rows

    int doy = 0;
    try {
      doy = naive_day_of_year(static_cast<int>(*year), static_cast<int>(*month), static_cast<int>(*day));
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), line_no);
    }
    const auto value = detail::parse_double(fields[3]);
    out += std::to_string(*year) + ',' + std::to_string(doy) + ',';
    out += (value && std::isfinite(*value) && *value >= 0.0) ? detail::format_double(*value) : "NA";
    out += '\n';
    ++rows;
  }
  if (rows == 0) throw EmptyDatasetError();
  return out;
}

Dataset synthesize_ensemble(const SyntheticConfig& config) {
  if (config.coefficients.empty() || config.coefficients.size() % 2 == 0)
    throw ConfigError("synthetic coefficient vector must have odd length");
  if (!(config.noise_sd >= 0.0) || !std::isfinite(config.noise_sd))
    throw ConfigError("noise standard deviation must be non-negative");
  if (config.year_offsets.empty()) throw ConfigError("synthetic ensemble needs at least one year");
  if (!(config.period > 0.0)) throw ConfigError("period must be positive");

  const FourierBasis basis(static_cast<int>(config.coefficients.size()), config.period);
  std::vector<double> truth(365);
  for (int day = 1; day <= 365; ++day) {
    double v = 0.0;
    for (int k = 1; k <= basis.count(); ++k) v += config.coefficients[k - 1] * basis.eval(day, k);
    truth[day - 1] = v;
  }

  Dataset out;
  out.region = config.region;
  for (std::size_t i = 0; i < config.year_offsets.size(); ++i) {
    RawYearSeries series;
    series.year = config.first_year + static_cast<int>(i);
    const bool sparse = config.pattern == SamplingPattern::alternate_day &&
                        (!config.daily_from_year || series.year < *config.daily_from_year);
    Xoshiro256 rng(config.seed, i);
    for (int day = 1; day <= 365; day += sparse ? 2 : 1) {
      const double noise = config.noise_sd > 0.0 ? config.noise_sd * rng.normal() : 0.0;
      series.samples.push_back({day, truth[day - 1] + config.year_offsets[i] + noise});
    }
    out.years.push_back(std::move(series));
  }
  return out;
}

}  // namespace fdband
