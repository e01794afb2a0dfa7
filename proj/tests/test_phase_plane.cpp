// SPDX-License-Identifier: Apache-2.0
#include "fdband/error.hpp"
#include "fdband/phase_plane.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace fdband;
using fdband::testing::random_ensemble;

TEST_CASE("differentiate closed forms") {
  const FourierBasis basis(5);
  const FourierCurve constant(basis, {3, 0, 0, 0, 0});
  const auto flat = differentiate(constant, 1);
  for (double c : flat.coefficients()) CHECK(c == 0.0);

  const FourierCurve sine(basis, {0, 1, 0, 0, 0});
  const auto d = differentiate(sine, 1);
  CHECK(d.coefficients()[0] == 0.0);
  CHECK(d.coefficients()[1] == 0.0);
  CHECK(d.coefficients()[2] == doctest::Approx(basis.omega()));
  CHECK(d.coefficients()[3] == 0.0);
  CHECK(d.coefficients()[4] == 0.0);

  const auto d2 = differentiate(sine, 2);
  CHECK(d2.coefficients()[1] == doctest::Approx(-basis.omega() * basis.omega()));

  CHECK_THROWS_AS(differentiate(sine, 0), ArgumentError);
  CHECK_THROWS_AS(differentiate(sine, 3), ArgumentError);
}

TEST_CASE("differentiating twice equals order 2; constant term is zero") {
  oracle::TestRng rng(1);
  const auto e = random_ensemble(rng, 10, 21);
  for (const auto& curve : e.curves) {
    const auto twice = differentiate(differentiate(curve, 1), 1);
    const auto direct = differentiate(curve, 2);
    CHECK(direct.coefficients()[0] == 0.0);
    for (std::size_t k = 0; k < 21; ++k)
      CHECK(std::abs(twice.coefficients()[k] - direct.coefficients()[k]) <= 1e-12);
  }
}

TEST_CASE("analytic derivative matches finite differences of the curve") {
  oracle::TestRng rng(2);
  const auto e = random_ensemble(rng, 5, 21);
  const double h = 1e-3;
  for (const auto& curve : e.curves) {
    const auto velocity = differentiate(curve, 1);
    double scale = 0.0;
    for (double t : e.grid) scale = std::max(scale, std::abs(velocity(t)));
    for (double t : e.grid) {
      const double fd = oracle::central_difference([&](double x) { return curve(x); }, t, h);
      CHECK(std::abs(fd - velocity(t)) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("velocity integrates to zero over a period") {
  oracle::TestRng rng(3);
  const auto e = random_ensemble(rng, 5, 21);
  for (const auto& curve : e.curves) {
    const auto v = differentiate(curve, 1);
    const int steps = 36500;
    const double h = 365.0 / steps;
    double integral = 0.5 * (v(0.0) + v(365.0));
    for (int i = 1; i < steps; ++i) integral += v(i * h);
    CHECK(std::abs(integral * h) <= 1e-8);
  }
}

TEST_CASE("mean-then-differentiate equals differentiate-then-mean") {
  oracle::TestRng rng(4);
  const auto e = random_ensemble(rng, 9, 11);
  const auto a = differentiate(mean_curve(e), 1);
  std::vector<double> b(11, 0.0);
  for (const auto& curve : e.curves) {
    const auto d = differentiate(curve, 1);
    for (std::size_t k = 0; k < 11; ++k) b[k] += d.coefficients()[k] / 9.0;
  }
  for (std::size_t k = 0; k < 11; ++k) CHECK(std::abs(a.coefficients()[k] - b[k]) <= 1e-12);
}

TEST_CASE("phase_curve") {
  const FourierBasis basis(3);
  CurveEnsemble flat;
  flat.basis = basis;
  flat.curves.emplace_back(basis, std::vector<double>{5, 0, 0}, 1990);
  const auto pc = phase_curve(flat, "flat");
  for (std::size_t j = 0; j < pc.grid.size(); ++j) {
    CHECK(pc.velocity[j] == 0.0);
    CHECK(pc.acceleration[j] == 0.0);
  }
  REQUIRE(pc.month_anchors.size() == 12);
  for (std::size_t m = 0; m < 12; ++m) {
    CHECK(pc.month_anchors[m].day == kMonthStartDays[m]);
    CHECK(pc.grid[pc.month_anchors[m].grid_index] == kMonthStartDays[m]);
  }

  CurveEnsemble sine;
  sine.basis = basis;
  sine.curves.emplace_back(basis, std::vector<double>{0, 1, 0}, 1990);
  const auto osc = phase_curve(sine);
  for (std::size_t j = 0; j < osc.grid.size(); ++j) {
    const double v = osc.velocity[j] / basis.omega();
    CHECK(std::abs(osc.area[j] * osc.area[j] + v * v - 1.0) <= 1e-9);
  }
  CHECK_THROWS_AS(phase_curve(CurveEnsemble{}), ArgumentError);
}

TEST_CASE("zero_crossings") {
  const FourierBasis basis(3);
  const auto grid = day_grid();
  const FourierCurve sine(basis, {0, 1, 0});
  const auto zeros = zero_crossings(sine, 1, grid);
  REQUIRE(zeros.size() == 2);
  CHECK(std::abs(zeros[0] - 365.0 / 4) <= 1e-2);
  CHECK(std::abs(zeros[1] - 3 * 365.0 / 4) <= 1e-2);

  const FourierCurve constant(basis, {4, 0, 0});
  CHECK(zero_crossings(constant, 1, grid).empty());
  CHECK(zero_crossings(constant, 2, grid).empty());
}

TEST_CASE("every zero crossing brackets a sign change") {
  oracle::TestRng rng(5);
  const auto e = random_ensemble(rng, 10, 21);
  for (const auto& curve : e.curves)
    for (int order : {1, 2}) {
      const auto d = differentiate(curve, order);
      for (double z : zero_crossings(curve, order, e.grid)) CHECK(d(z - 1e-3) * d(z + 1e-3) < 0.0);
    }
}
