// SPDX-License-Identifier: Apache-2.0
#include "fdband/change_measure.hpp"

#include "fdband/error.hpp"

#include <cmath>
#include <limits>

namespace fdband {

ChangeCurve percentage_change(const GridFunction& baseline, const GridFunction& target, double epsilon) {
  if (baseline.grid != target.grid || baseline.values.size() != target.values.size())
    throw ArgumentError("change curve needs baseline and target on the same grid");
  if (!(epsilon >= 0.0)) throw ArgumentError("epsilon must be non-negative");

  ChangeCurve out;
  out.grid = baseline.grid;
  out.baseline_label = baseline.label;
  out.target_label = target.label;
  out.values.resize(baseline.values.size());
  out.defined.resize(baseline.values.size());
  for (std::size_t j = 0; j < baseline.values.size(); ++j) {
    const double base = baseline.values[j];
    out.defined[j] = std::abs(base) > epsilon;
    out.values[j] = out.defined[j] ? (target.values[j] - base) / base : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace fdband
