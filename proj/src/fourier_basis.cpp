// SPDX-License-Identifier: Apache-2.0
#include "fdband/fourier_basis.hpp"

#include "fdband/error.hpp"

#include <cmath>
#include <string>

namespace fdband {

FourierBasis::FourierBasis(int count, double period) : count_(count), period_(period) {
  if (count < 1 || count % 2 == 0)
    throw ArgumentError("Fourier basis size must be odd and positive, got " + std::to_string(count));
  if (!(period > 0.0) || !std::isfinite(period))
    throw ArgumentError("Fourier basis period must be positive and finite");
  omega_ = 2.0 * std::numbers::pi / period;
}

double FourierBasis::eval(double t, int k, int deriv) const {
  if (k < 1 || k > count_)
    throw ArgumentError("basis index " + std::to_string(k) + " outside [1, " +
                        std::to_string(count_) + "]");
  if (deriv < 0 || deriv > 2)
    throw ArgumentError("unsupported derivative order " + std::to_string(deriv));

  if (k == 1) return deriv == 0 ? 1.0 : 0.0;

  const double freq = harmonic(k) * omega_;
  const double s = std::sin(freq * t);
  const double c = std::cos(freq * t);
  const bool is_sine = k % 2 == 0;
  switch (deriv) {
    case 0:
      return is_sine ? s : c;
    case 1:
      return is_sine ? freq * c : -freq * s;
    default:
      return is_sine ? -freq * freq * s : -freq * freq * c;
  }
}

DesignMatrix design_matrix(const FourierBasis& basis, std::span<const double> grid, int deriv) {
  if (grid.empty()) throw ArgumentError("design matrix requires a non-empty grid");
  if (deriv < 0 || deriv > 2)
    throw ArgumentError("unsupported derivative order " + std::to_string(deriv));

  DesignMatrix out;
  out.grid.assign(grid.begin(), grid.end());
  out.deriv = deriv;
  out.values.resize(static_cast<Eigen::Index>(grid.size()), basis.count());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!std::isfinite(grid[j])) throw ArgumentError("design matrix grid contains a non-finite day");
    for (int k = 1; k <= basis.count(); ++k)
      out.values(static_cast<Eigen::Index>(j), k - 1) = basis.eval(grid[j], k, deriv);
  }
  return out;
}

std::vector<double> day_grid(int first, int last) {
  std::vector<double> grid;
  for (int d = first; d <= last; ++d) grid.push_back(d);
  return grid;
}

}  // namespace fdband
