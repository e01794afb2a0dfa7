// SPDX-License-Identifier: Apache-2.0
#include "fdband/bootstrap_bands.hpp"
#include "fdband/error.hpp"
#include "fdband/serialize.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace fdband;
using fdband::testing::random_ensemble;
using fdband::testing::shifted;

namespace {

/// Exact mean and variance of the resampled mean at one grid point by
/// enumerating all n^n ordered draws.
std::pair<double, double> enumerate_resampled_mean(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= n;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m += x[c % n];
      c /= n;
    }
    m /= static_cast<double>(n);
    s1 += m;
    s2 += m * m;
  }
  const double mean = s1 / static_cast<double>(total);
  return {mean, s2 / static_cast<double>(total) - mean * mean};
}

std::vector<double> column(const CurveEnsemble& e, std::size_t j) {
  std::vector<double> out;
  for (const auto& c : e.curves) out.push_back(c(e.grid[j]));
  return out;
}

}  // namespace

TEST_CASE("interpolated_quantile") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(interpolated_quantile(v, 0.0) == 1.0);
  CHECK(interpolated_quantile(v, 1.0) == 4.0);
  CHECK(interpolated_quantile(v, 0.5) == 2.5);
  CHECK(interpolated_quantile(v, 0.25) == doctest::Approx(1.75));
  CHECK_THROWS_AS(interpolated_quantile(std::vector<double>{}, 0.5), ArgumentError);
}

TEST_CASE("degenerate blocks give zero-width bands") {
  oracle::TestRng rng(1);
  auto e = random_ensemble(rng, 1);
  const auto truth = e.curves[0].evaluate(e.grid);
  const auto band = bootstrap_band(e, {200, 0.95, 7, 1});
  for (std::size_t j = 0; j < truth.size(); ++j) {
    CHECK(band.lower[j] == doctest::Approx(truth[j]).epsilon(1e-14));
    CHECK(band.center[j] == doctest::Approx(truth[j]).epsilon(1e-14));
    CHECK(band.upper[j] == doctest::Approx(truth[j]).epsilon(1e-14));
  }
  for (double v : bootstrap_variance(e, 200, 7).values) CHECK(v <= 1e-24);

  for (int y = 1980; y < 1985; ++y) e.curves.emplace_back(e.basis, e.curves[0].coefficients(), y);
  const auto same = bootstrap_band(e, {200, 0.95, 7, 1});
  for (std::size_t j = 0; j < truth.size(); ++j) CHECK(same.upper[j] - same.lower[j] <= 1e-12);
  for (double v : bootstrap_variance(e, 200, 7).values) CHECK(v <= 1e-24);
}

TEST_CASE("two-curve block matches the enumerated resampling distribution") {
  oracle::TestRng rng(2);
  auto e = random_ensemble(rng, 2, 5, 1979, {30.0, 120.0, 250.0});
  const std::size_t b = 20000;
  const auto band = bootstrap_band(e, {b, 0.95, 11, 1});
  const auto var = bootstrap_variance(e, b, 11);
  for (std::size_t j = 0; j < e.grid.size(); ++j) {
    const auto [mean, variance] = enumerate_resampled_mean(column(e, j));
    const double f = e.curves[0](e.grid[j]);
    const double g = e.curves[1](e.grid[j]);
    CHECK(mean == doctest::Approx((f + g) / 2));
    CHECK(variance == doctest::Approx((f - g) * (f - g) / 8));
    const double se = std::sqrt(variance / static_cast<double>(b));
    CHECK(std::abs(band.center[j] - mean) <= 3.0 * se);
    // variance of a sample variance from a 3-point distribution: loose 5%
    CHECK(var.values[j] == doctest::Approx(variance).epsilon(0.05));
  }
}

TEST_CASE("bootstrap variance approaches ((n-1)/n) Var/n") {
  oracle::TestRng rng(3);
  const auto e = random_ensemble(rng, 6, 5, 1979, {15.0, 200.0});
  const auto var = bootstrap_variance(e, 40000, 5);
  for (std::size_t j = 0; j < e.grid.size(); ++j) {
    const auto x = column(e, j);
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v / n;
    double s2 = 0.0;
    for (double v : x) s2 += (v - mean) * (v - mean) / (n - 1);
    const double closed = (n - 1) / n * s2 / n;
    CHECK(enumerate_resampled_mean(x).second == doctest::Approx(closed).epsilon(1e-10));
    CHECK(var.values[j] == doctest::Approx(closed).epsilon(0.03));
  }
}

TEST_CASE("determinism across parallelism") {
  oracle::TestRng rng(4);
  const auto e = random_ensemble(rng, 12);
  const auto serial = band_csv(bootstrap_band(e, {500, 0.95, 42, 1}));
  CHECK(serial == band_csv(bootstrap_band(e, {500, 0.95, 42, 4})));
  CHECK(serial == band_csv(bootstrap_band(e, {500, 0.95, 42, 7})));
  CHECK(serial != band_csv(bootstrap_band(e, {500, 0.95, 43, 1})));
}

TEST_CASE("band invariants") {
  oracle::TestRng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto e = random_ensemble(rng, static_cast<std::size_t>(rng.integer(2, 15)));
    const std::size_t b = 300;
    const auto seed = static_cast<std::uint64_t>(trial);
    const auto b90 = bootstrap_band(e, {b, 0.90, seed, 1});
    const auto b95 = bootstrap_band(e, {b, 0.95, seed, 1});
    const auto b99 = bootstrap_band(e, {b, 0.99, seed, 1});
    const auto reps = bootstrap_replicates(e, b, seed);
    for (std::size_t j = 0; j < e.grid.size(); ++j) {
      CHECK(b95.lower[j] <= b95.center[j]);
      CHECK(b95.center[j] <= b95.upper[j]);
      CHECK(b99.lower[j] <= b90.lower[j]);
      CHECK(b99.upper[j] >= b90.upper[j]);
      std::size_t below = 0;
      for (std::size_t r = 0; r < b; ++r) below += reps.means[r * e.grid.size() + j] < b95.lower[j];
      CHECK(static_cast<double>(below) / b <= 0.025 + 1.0 / b + 1e-12);
    }
  }
}

TEST_CASE("shift equivariance") {
  oracle::TestRng rng(6);
  const auto e = random_ensemble(rng, 10);
  CurveEnsemble moved = e;
  const double c = 2.75;
  for (auto& curve : moved.curves) curve = shifted(curve, c);
  const auto a = bootstrap_band(e, {400, 0.95, 9, 1});
  const auto b = bootstrap_band(moved, {400, 0.95, 9, 1});
  for (std::size_t j = 0; j < e.grid.size(); ++j) {
    CHECK(std::abs(b.lower[j] - a.lower[j] - c) <= 1e-12);
    CHECK(std::abs(b.center[j] - a.center[j] - c) <= 1e-12);
    CHECK(std::abs(b.upper[j] - a.upper[j] - c) <= 1e-12);
  }
}

TEST_CASE("bootstrap argument errors") {
  oracle::TestRng rng(7);
  const auto e = random_ensemble(rng, 3);
  CHECK_THROWS_AS(bootstrap_band(CurveEnsemble{}, {}), ArgumentError);
  CHECK_THROWS_AS(bootstrap_band(e, {0, 0.95, 1, 1}), ArgumentError);
  CHECK_THROWS_AS(bootstrap_band(e, {10, 1.0, 1, 1}), ArgumentError);
  CHECK_THROWS_AS(bootstrap_band(e, {10, 0.0, 1, 1}), ArgumentError);
  CHECK_THROWS_AS(bootstrap_variance(CurveEnsemble{}, 10, 1), ArgumentError);
}

TEST_CASE("band_overlap") {
  ConfidenceBand a;
  a.grid = {1, 2};
  a.lower = {0, 0};
  a.center = {0.5, 0.5};
  a.upper = {1, 1};
  ConfidenceBand b = a;
  const auto same = band_overlap(a, b);
  CHECK(same.values == std::vector<double>{1, 1});

  b.lower = {2, 0.5};
  b.center = {2.5, 1};
  b.upper = {3, 1.5};
  const auto mixed = band_overlap(a, b);
  CHECK(mixed.values[0] == -1.0);
  CHECK(mixed.values[1] == 0.5);
  CHECK(disjoint_fraction(mixed) == 0.5);

  b.grid = {1, 3};
  CHECK_THROWS_AS(band_overlap(a, b), ArgumentError);
  b.grid = a.grid;
  b.level = 0.9;
  CHECK_THROWS_AS(band_overlap(a, b), ArgumentError);
}
