// SPDX-License-Identifier: Apache-2.0
#include "fdband/bootstrap_bands.hpp"

#include "fdband/error.hpp"
#include "fdband/rng.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace fdband {

namespace {

void check_block(const CurveEnsemble& block, std::size_t b_samples) {
  if (block.empty()) throw ArgumentError("bootstrap of an empty block");
  if (b_samples == 0) throw ArgumentError("bootstrap sample count must be at least 1");
}

unsigned worker_count(unsigned parallelism, std::size_t jobs) {
  unsigned n = parallelism == 0 ? std::max(1u, std::thread::hardware_concurrency()) : parallelism;
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

}  // namespace

BootstrapReplicates bootstrap_replicates(const CurveEnsemble& block, std::size_t b_samples, std::uint64_t seed,
                                         unsigned parallelism) {
  check_block(block, b_samples);
  const std::size_t n = block.size();
  const std::size_t m = block.grid.size();

  std::vector<double> curves(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto values = block.curves[i].evaluate(block.grid);
    std::copy(values.begin(), values.end(), curves.begin() + static_cast<std::ptrdiff_t>(i * m));
  }

  BootstrapReplicates out{b_samples, m, std::vector<double>(b_samples * m, 0.0)};
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      Xoshiro256 rng(seed, r);
      double* row = out.means.data() + r * m;
      for (std::size_t draw = 0; draw < n; ++draw) {
        const double* curve = curves.data() + rng.below(n) * m;
        for (std::size_t j = 0; j < m; ++j) row[j] += curve[j];
      }
      for (std::size_t j = 0; j < m; ++j) row[j] /= static_cast<double>(n);
    }
  };

  const unsigned workers = worker_count(parallelism, b_samples);
  if (workers <= 1) {
    run(0, b_samples);
    return out;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (b_samples + workers - 1) / workers;
  for (std::size_t begin = 0; begin < b_samples; begin += chunk)
    pool.emplace_back(run, begin, std::min(b_samples, begin + chunk));
  return out;
}

double interpolated_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ArgumentError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ConfidenceBand band_from_replicates(const BootstrapReplicates& replicates, const CurveEnsemble& block,
                                    const BootstrapOptions& options) {
  if (!(options.level > 0.0 && options.level < 1.0)) throw ArgumentError("band level must lie in (0, 1)");
  const std::size_t b = replicates.b_samples;
  const std::size_t m = replicates.grid_size;

  ConfidenceBand band;
  band.grid = block.grid;
  band.level = options.level;
  band.b_samples = b;
  band.seed = options.seed;
  band.years = {block.first_year(), block.last_year()};
  band.lower.resize(m);
  band.center.resize(m);
  band.upper.resize(m);

  const double q_lo = (1.0 - options.level) / 2.0;
  const double q_hi = (1.0 + options.level) / 2.0;
  std::vector<double> column(b);
  for (std::size_t j = 0; j < m; ++j) {
    double sum = 0.0;
    for (std::size_t r = 0; r < b; ++r) {
      column[r] = replicates.means[r * m + j];
      sum += column[r];
    }
    std::sort(column.begin(), column.end());
    // Clamping keeps lower <= center <= upper when rounding in the mean
    // lands just outside the quantiles (e.g. all replicates equal).
    band.center[j] = std::clamp(sum / static_cast<double>(b), column.front(), column.back());
    band.lower[j] = std::min(interpolated_quantile(column, q_lo), band.center[j]);
    band.upper[j] = std::max(interpolated_quantile(column, q_hi), band.center[j]);
  }
  return band;
}

ConfidenceBand bootstrap_band(const CurveEnsemble& block, const BootstrapOptions& options) {
  check_block(block, options.b_samples);
  if (!(options.level > 0.0 && options.level < 1.0)) throw ArgumentError("band level must lie in (0, 1)");
  const auto replicates = bootstrap_replicates(block, options.b_samples, options.seed, options.parallelism);
  return band_from_replicates(replicates, block, options);
}

GridFunction variance_from_replicates(const BootstrapReplicates& replicates, const std::vector<double>& grid) {
  const std::size_t b = replicates.b_samples;
  const std::size_t m = replicates.grid_size;
  GridFunction out{grid, std::vector<double>(m, 0.0), "bootstrap variance"};
  if (b < 2) return out;
  for (std::size_t j = 0; j < m; ++j) {
    double mean = 0.0;
    for (std::size_t r = 0; r < b; ++r) mean += replicates.means[r * m + j];
    mean /= static_cast<double>(b);
    double ss = 0.0;
    for (std::size_t r = 0; r < b; ++r) {
      const double d = replicates.means[r * m + j] - mean;
      ss += d * d;
    }
    out.values[j] = ss / static_cast<double>(b - 1);
  }
  return out;
}

GridFunction bootstrap_variance(const CurveEnsemble& block, std::size_t b_samples, std::uint64_t seed,
                                unsigned parallelism) {
  return variance_from_replicates(bootstrap_replicates(block, b_samples, seed, parallelism), block.grid);
}

GridFunction band_overlap(const ConfidenceBand& a, const ConfidenceBand& b) {
  if (a.grid != b.grid) throw ArgumentError("bands are defined on different grids");
  if (a.level != b.level) throw ArgumentError("bands have different levels");
  GridFunction out{a.grid, std::vector<double>(a.grid.size()), a.years.label() + " vs " + b.years.label()};
  for (std::size_t j = 0; j < a.grid.size(); ++j)
    out.values[j] = std::min(a.upper[j], b.upper[j]) - std::max(a.lower[j], b.lower[j]);
  return out;
}

double disjoint_fraction(const GridFunction& overlap) {
  if (overlap.values.empty()) return 0.0;
  const auto disjoint = std::count_if(overlap.values.begin(), overlap.values.end(), [](double v) { return v < 0.0; });
  return static_cast<double>(disjoint) / static_cast<double>(overlap.values.size());
}

}  // namespace fdband
