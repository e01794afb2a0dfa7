// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdband/fourier_basis.hpp"
#include "fdband/ingest.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fdband {

/// x(t) = sum_k c_k phi_k(t) over a fixed Fourier basis.
class FourierCurve {
 public:
  /// Throws ArgumentError if the coefficient count differs from basis.count().
  FourierCurve(FourierBasis basis, std::vector<double> coefficients, int year = 0);

  const FourierBasis& basis() const noexcept { return basis_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  int year() const noexcept { return year_; }

  double operator()(double t) const { return evaluate(t, 0); }
  /// Value of the deriv-th derivative (0, 1 or 2) at t.
  double evaluate(double t, int deriv = 0) const;
  std::vector<double> evaluate(std::span<const double> grid, int deriv = 0) const;

 private:
  FourierBasis basis_;
  std::vector<double> coefficients_;
  int year_;
};

/// One smoothed curve per year on a shared basis and evaluation grid.
struct CurveEnsemble {
  FourierBasis basis{1};
  std::vector<FourierCurve> curves;  // ascending years
  std::vector<double> grid = day_grid();

  bool empty() const noexcept { return curves.empty(); }
  std::size_t size() const noexcept { return curves.size(); }
  int first_year() const { return curves.front().year(); }
  int last_year() const { return curves.back().year(); }

  /// Throws ArgumentError when the curves violate the shared-basis or
  /// ascending-year invariants.
  void validate() const;
};

/// Weighted least-squares fit over the series' observed days, via a
/// column-pivoted Householder QR of the row-scaled design matrix.
///
/// Throws NumericError when the series has fewer samples than basis
/// functions or the design is rank deficient, ArgumentError on bad weights.
FourierCurve fit_year(const RawYearSeries& series, const FourierBasis& basis,
                      std::optional<std::span<const double>> weights = std::nullopt);

/// Mean squared residual over the series' own sample days.
double residual_mse(const RawYearSeries& series, const FourierCurve& curve);

/// Fits every year of the dataset with the same basis.
CurveEnsemble smooth_dataset(const Dataset& dataset, const FourierBasis& basis,
                             std::vector<double> grid = day_grid());

struct MseProfile {
  std::vector<int> p_values;
  std::vector<double> mse_hat;
  std::vector<double> first_diff;     // mse_hat[i+1] - mse_hat[i]
  std::vector<std::string> warnings;  // years skipped for having too few samples
};

std::vector<int> odd_values(int first = 1, int last = 51);

/// Equal-weight average of per-year residual MSE for each basis size.
/// Years with fewer samples than p are skipped with a warning; fit failures
/// are rethrown annotated with (year, p).
MseProfile mse_profile(const Dataset& dataset, std::span<const int> p_values, double period = kDaysPerYear);

struct BasisSelection {
  int basis_count = 0;
  std::size_t index = 0;
  bool converged = false;
};

inline constexpr double kDefaultFlatnessTol = 0.01;

/// Smallest p whose subsequent first differences all satisfy
/// |diff| <= flatness_tol * mse_hat(p). Falls back to the largest p with
/// converged = false. Throws ArgumentError for profiles shorter than 3.
BasisSelection select_basis_count(const MseProfile& profile, double flatness_tol = kDefaultFlatnessTol);

}  // namespace fdband
