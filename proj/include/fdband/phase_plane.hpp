// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/smoother.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace fdband {

/// First day of each month on the 365-day domain.
inline constexpr std::array<int, 12> kMonthStartDays{1, 32, 60, 91, 121, 152, 182, 213, 244, 274, 305, 335};
inline constexpr std::array<const char*, 12> kMonthNames{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                          "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

struct MonthAnchor {
  std::string month;
  int day;
  std::size_t grid_index;
};

struct PhaseCurve {
  std::vector<double> grid;
  std::vector<double> area;
  std::vector<double> velocity;
  std::vector<double> acceleration;
  std::vector<MonthAnchor> month_anchors;  // only months whose first day is on the grid
  std::string label;
};

/// Exact derivative of order 1 or 2, expressed over the same basis.
/// Harmonic m maps sin -> m*omega*cos and cos -> -m*omega*sin.
FourierCurve differentiate(const FourierCurve& curve, int order);

/// Coefficient-wise mean of the ensemble's curves.
FourierCurve mean_curve(const CurveEnsemble& ensemble);

/// Area, velocity and acceleration of the block-mean curve on the ensemble grid.
PhaseCurve phase_curve(const CurveEnsemble& block, std::string label = {});
PhaseCurve phase_curve(const FourierCurve& curve, std::span<const double> grid, std::string label = {});

/// Days where the order-th derivative changes sign between grid points,
/// refined by bisection to 1e-4 day. Identically zero derivatives yield none.
std::vector<double> zero_crossings(const FourierCurve& curve, int order, std::span<const double> grid);

}  // namespace fdband
