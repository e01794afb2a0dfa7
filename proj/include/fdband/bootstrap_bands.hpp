// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/curve_stats.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fdband {

struct ConfidenceBand {
  std::vector<double> grid;
  std::vector<double> lower;
  std::vector<double> center;
  std::vector<double> upper;
  double level = 0.95;
  std::size_t b_samples = 0;
  std::uint64_t seed = 0;
  YearRange years{0, 0};
};

inline constexpr std::size_t kDefaultBootstrapSamples = 5000;
inline constexpr double kDefaultBandLevel = 0.95;

struct BootstrapOptions {
  std::size_t b_samples = kDefaultBootstrapSamples;
  double level = kDefaultBandLevel;
  std::uint64_t seed = 0;
  unsigned parallelism = 1;  // worker threads; 0 = hardware concurrency
};

/// B resampled mean functions, row-major: replicate r occupies
/// [r * grid_size, (r + 1) * grid_size). Replicate r draws its n indices
/// from Xoshiro256(seed, r), independent of thread scheduling.
struct BootstrapReplicates {
  std::size_t b_samples = 0;
  std::size_t grid_size = 0;
  std::vector<double> means;

  std::span<const double> replicate(std::size_t r) const {
    return {means.data() + r * grid_size, grid_size};
  }
};

BootstrapReplicates bootstrap_replicates(const CurveEnsemble& block, std::size_t b_samples, std::uint64_t seed,
                                         unsigned parallelism = 1);

/// Linear interpolation between order statistics: h = (n-1) q. `sorted` ascending.
double interpolated_quantile(std::span<const double> sorted, double q);

/// Pointwise percentile band of the block's bootstrap mean function.
/// Throws ArgumentError for an empty block, b_samples == 0 or level outside (0, 1).
ConfidenceBand bootstrap_band(const CurveEnsemble& block, const BootstrapOptions& options);
ConfidenceBand band_from_replicates(const BootstrapReplicates& replicates, const CurveEnsemble& block,
                                    const BootstrapOptions& options);

/// Pointwise sample variance (divisor B-1, zero when B == 1) of the bootstrap means.
GridFunction bootstrap_variance(const CurveEnsemble& block, std::size_t b_samples, std::uint64_t seed,
                                unsigned parallelism = 1);
GridFunction variance_from_replicates(const BootstrapReplicates& replicates, const std::vector<double>& grid);

/// Per-day overlap of two bands: min(upper) - max(lower). Positive where the
/// intervals intersect, negative (minus the gap) where they are disjoint.
GridFunction band_overlap(const ConfidenceBand& a, const ConfidenceBand& b);

/// Fraction of grid points with a negative overlap.
double disjoint_fraction(const GridFunction& overlap);

}  // namespace fdband
