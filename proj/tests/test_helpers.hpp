// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/smoother.hpp"
#include "oracles.hpp"

namespace fdband::testing {

/// Ensemble of random curves on days 1..365 with consecutive years.
inline CurveEnsemble random_ensemble(oracle::TestRng& rng, std::size_t n, int p = 7, int first_year = 1979,
                                     std::vector<double> grid = day_grid()) {
  CurveEnsemble e;
  e.basis = FourierBasis(p);
  e.grid = std::move(grid);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(static_cast<std::size_t>(p));
    c[0] = rng.uniform(8.0, 14.0);
    for (int k = 1; k < p; ++k) c[k] = rng.uniform(-3.0, 3.0);
    e.curves.emplace_back(e.basis, std::move(c), first_year + static_cast<int>(i));
  }
  return e;
}

inline FourierCurve shifted(const FourierCurve& curve, double offset) {
  auto c = curve.coefficients();
  c[0] += offset;
  return FourierCurve(curve.basis(), std::move(c), curve.year());
}

}  // namespace fdband::testing
