// SPDX-License-Identifier: Apache-2.0
#include "fdband/change_measure.hpp"
#include "fdband/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fdband;

namespace {

GridFunction make(std::vector<double> values, std::string label = {}) {
  GridFunction f;
  for (std::size_t j = 0; j < values.size(); ++j) f.grid.push_back(static_cast<double>(j + 1));
  f.values = std::move(values);
  f.label = std::move(label);
  return f;
}

}  // namespace

TEST_CASE("seventy percent of the baseline is a 30 percent decline") {
  const auto base = make({10, 4, 2.5}, "1979-1990");
  const auto target = make({7, 2.8, 1.75}, "2003-2015");
  const auto c = percentage_change(base, target);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(c.defined[j]);
    CHECK(c.values[j] == doctest::Approx(-0.30));
  }
  CHECK(c.baseline_label == "1979-1990");
  CHECK(c.target_label == "2003-2015");
}

TEST_CASE("change properties on random curves") {
  oracle::TestRng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(50), b(50), c(50);
    for (std::size_t j = 0; j < 50; ++j) {
      a[j] = rng.uniform(1.0, 15.0);
      b[j] = rng.uniform(1.0, 15.0);
      c[j] = rng.uniform(1.0, 15.0);
    }
    const double s = rng.uniform(0.1, 10.0);
    std::vector<double> as(a), bs(b);
    for (std::size_t j = 0; j < 50; ++j) {
      as[j] *= s;
      bs[j] *= s;
    }
    const auto ab = percentage_change(make(a), make(b));
    const auto scaled = percentage_change(make(as), make(bs));
    const auto bc = percentage_change(make(b), make(c));
    const auto ac = percentage_change(make(a), make(c));
    for (std::size_t j = 0; j < 50; ++j) {
      CHECK(std::abs(scaled.values[j] - ab.values[j]) <= 1e-12);
      CHECK((ab.values[j] > 0) == (b[j] > a[j]));
      // (1 + ab)(1 + bc) = 1 + ac
      CHECK(std::abs((1 + ab.values[j]) * (1 + bc.values[j]) - (1 + ac.values[j])) <= 1e-12);
    }
  }
}

TEST_CASE("near-zero baselines are undefined") {
  const auto c = percentage_change(make({0.0, 1e-7, 2.0, -1e-6}), make({1, 1, 1, 1}));
  CHECK_FALSE(c.defined[0]);
  CHECK_FALSE(c.defined[1]);
  CHECK(c.defined[2]);
  CHECK_FALSE(c.defined[3]);
  CHECK(std::isnan(c.values[0]));
  CHECK(std::isnan(c.values[1]));
  CHECK(c.values[2] == -0.5);
  const auto loose = percentage_change(make({1e-7}), make({2e-7}), 0.0);
  CHECK(loose.defined[0]);
  CHECK(loose.values[0] == doctest::Approx(1.0));
}

TEST_CASE("change argument errors") {
  auto a = make({1, 2, 3});
  auto b = make({1, 2});
  CHECK_THROWS_AS(percentage_change(a, b), ArgumentError);
  b = make({1, 2, 3});
  b.grid[1] = 7;
  CHECK_THROWS_AS(percentage_change(a, b), ArgumentError);
  CHECK_THROWS_AS(percentage_change(a, a, -1.0), ArgumentError);
}
