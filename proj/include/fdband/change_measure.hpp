// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/curve_stats.hpp"

#include <string>
#include <vector>

namespace fdband {

inline constexpr double kDefaultChangeEpsilon = 1e-6;

struct ChangeCurve {
  std::vector<double> grid;
  std::vector<double> values;  // NaN where undefined
  std::vector<bool> defined;   // false where |baseline| <= epsilon
  std::string baseline_label;
  std::string target_label;
};

/// Pointwise (target - baseline) / baseline as a fraction.
ChangeCurve percentage_change(const GridFunction& baseline, const GridFunction& target,
                              double epsilon = kDefaultChangeEpsilon);

}  // namespace fdband
