// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <span>
#include <vector>

namespace fdband {

inline constexpr double kDaysPerYear = 365.0;

/// Fourier basis with an odd number of functions:
///   k = 1         -> 1
///   k even        -> sin((k/2) * omega * t)
///   k odd, k > 1  -> cos(((k-1)/2) * omega * t)
class FourierBasis {
 public:
  /// Throws ArgumentError if `count` is even or < 1, or `period` is not positive.
  explicit FourierBasis(int count, double period = kDaysPerYear);

  int count() const noexcept { return count_; }
  double period() const noexcept { return period_; }
  double omega() const noexcept { return omega_; }

  /// Harmonic number of basis function k (0 for the constant).
  static int harmonic(int k) noexcept { return k / 2; }

  /// Value of the `deriv`-th derivative of basis function k (1-based) at t.
  /// deriv must be 0, 1 or 2.
  double eval(double t, int k, int deriv = 0) const;

  bool operator==(const FourierBasis& other) const noexcept {
    return count_ == other.count_ && period_ == other.period_;
  }

 private:
  int count_;
  double period_;
  double omega_;
};

struct DesignMatrix {
  std::vector<double> grid;
  int deriv = 0;
  Eigen::MatrixXd values;  // grid.size() x basis.count()
};

/// Rows follow `grid`; throws ArgumentError on an empty grid or non-finite day.
DesignMatrix design_matrix(const FourierBasis& basis, std::span<const double> grid, int deriv = 0);

/// Integer days first..last inclusive as doubles.
std::vector<double> day_grid(int first = 1, int last = 365);

}  // namespace fdband
