// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/smoother.hpp"

#include <string>
#include <vector>

namespace fdband {

struct GridFunction {
  std::vector<double> grid;
  std::vector<double> values;
  std::string label;
};

struct YearRange {
  int first;
  int last;  // inclusive
  int size() const noexcept { return last - first + 1; }
  std::string label() const { return std::to_string(first) + "-" + std::to_string(last); }
  bool operator==(const YearRange&) const = default;
};

/// Contiguous, non-overlapping year blocks d_1..d_t covering a dataset span.
struct BlockPartition {
  std::vector<YearRange> blocks;

  /// Throws ArgumentError unless the blocks are non-empty, contiguous and
  /// cover exactly [first_year, last_year].
  void validate(int first_year, int last_year) const;
  std::vector<int> sizes() const;

  /// Blocks of the given sizes starting at first_year.
  static BlockPartition from_sizes(int first_year, const std::vector<int>& sizes);
};

enum class PartitionPreset {
  balanced,  // floor split, remainder years go to the last blocks (18/19, 9/9/9/10, 7/7/7/8/8)
  decades,   // as balanced, but remainder years go to the first blocks (13/12/12)
  bands,     // as balanced, except 37 years in 3 blocks split 12/11/14
};

PartitionPreset parse_partition_preset(std::string_view name);
std::string_view partition_preset_name(PartitionPreset preset) noexcept;

BlockPartition preset_partition(int first_year, int year_count, int blocks, PartitionPreset preset);

GridFunction mean_function(const CurveEnsemble& ensemble);
/// Sample variance with divisor N-1; needs at least two curves.
GridFunction variance_function(const CurveEnsemble& ensemble);

std::vector<CurveEnsemble> group_by_blocks(const CurveEnsemble& ensemble, const BlockPartition& partition);

/// Pointwise a - b.
GridFunction mean_difference(const GridFunction& a, const GridFunction& b);

struct DayWindow {
  int first;
  int last;
};

struct ExtremaSummary {
  double min_value = 0;
  double max_value = 0;
  double min_day = 0;
  double max_day = 0;
  DayWindow min_window{};
  DayWindow max_window{};
  double mean_level = 0;
};

/// Arg-extrema on the grid (ties resolve to the earliest grid point) with
/// +/- window_radius day windows clipped to [1, 365].
ExtremaSummary extrema_summary(const GridFunction& f, int window_radius = 2);

}  // namespace fdband
