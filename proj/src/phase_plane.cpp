// SPDX-License-Identifier: Apache-2.0
#include "fdband/phase_plane.hpp"

#include "fdband/error.hpp"

#include <cmath>

namespace fdband {

namespace {

constexpr double kBisectionWidth = 1e-4;

std::vector<double> derivative_once(const FourierBasis& basis, const std::vector<double>& c) {
  std::vector<double> out(c.size(), 0.0);
  for (int k = 2; k + 1 <= basis.count(); k += 2) {
    const double freq = FourierBasis::harmonic(k) * basis.omega();
    const double sine = c[static_cast<std::size_t>(k - 1)];
    const double cosine = c[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] = freq * sine;
    out[static_cast<std::size_t>(k - 1)] = -freq * cosine;
  }
  return out;
}

}  // namespace

FourierCurve differentiate(const FourierCurve& curve, int order) {
  if (order != 1 && order != 2) throw ArgumentError("derivative order must be 1 or 2");
  auto c = derivative_once(curve.basis(), curve.coefficients());
  if (order == 2) c = derivative_once(curve.basis(), c);
  return FourierCurve(curve.basis(), std::move(c), curve.year());
}

FourierCurve mean_curve(const CurveEnsemble& ensemble) {
  if (ensemble.empty()) throw ArgumentError("mean curve of an empty ensemble");
  std::vector<double> c(static_cast<std::size_t>(ensemble.basis.count()), 0.0);
  for (const auto& curve : ensemble.curves)
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += curve.coefficients()[k];
  for (auto& v : c) v /= static_cast<double>(ensemble.size());
  return FourierCurve(ensemble.basis, std::move(c), ensemble.first_year());
}

PhaseCurve phase_curve(const FourierCurve& curve, std::span<const double> grid, std::string label) {
  PhaseCurve out;
  out.grid.assign(grid.begin(), grid.end());
  out.area = curve.evaluate(grid, 0);
  out.velocity = curve.evaluate(grid, 1);
  out.acceleration = curve.evaluate(grid, 2);
  out.label = std::move(label);
  for (std::size_t m = 0; m < kMonthStartDays.size(); ++m)
    for (std::size_t j = 0; j < grid.size(); ++j)
      if (grid[j] == kMonthStartDays[m]) {
        out.month_anchors.push_back({kMonthNames[m], kMonthStartDays[m], j});
        break;
      }
  return out;
}

PhaseCurve phase_curve(const CurveEnsemble& block, std::string label) {
  if (block.empty()) throw ArgumentError("phase curve of an empty block");
  return phase_curve(mean_curve(block), block.grid, std::move(label));
}

std::vector<double> zero_crossings(const FourierCurve& curve, int order, std::span<const double> grid) {
  const auto derivative = differentiate(curve, order);
  std::vector<double> out;
  double last_t = 0.0;
  double last_v = 0.0;
  bool have_last = false;
  for (double t : grid) {
    const double v = derivative(t);
    if (v == 0.0) continue;
    if (have_last && std::signbit(v) != std::signbit(last_v)) {
      double lo = last_t;
      double hi = t;
      double f_lo = last_v;
      while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = derivative(mid);
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    last_t = t;
    last_v = v;
    have_last = true;
  }
  return out;
}

}  // namespace fdband
