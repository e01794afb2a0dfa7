// SPDX-License-Identifier: Apache-2.0
#include "fdband/smoother.hpp"

#include "fdband/error.hpp"

#include <cmath>

namespace fdband {

FourierCurve::FourierCurve(FourierBasis basis, std::vector<double> coefficients, int year)
    : basis_(basis), coefficients_(std::move(coefficients)), year_(year) {
  if (static_cast<int>(coefficients_.size()) != basis_.count())
    throw ArgumentError("curve has " + std::to_string(coefficients_.size()) + " coefficients for a basis of " +
                        std::to_string(basis_.count()));
}

double FourierCurve::evaluate(double t, int deriv) const {
  double sum = 0.0;
  for (int k = 1; k <= basis_.count(); ++k) sum += coefficients_[k - 1] * basis_.eval(t, k, deriv);
  return sum;
}

std::vector<double> FourierCurve::evaluate(std::span<const double> grid, int deriv) const {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(evaluate(t, deriv));
  return out;
}

void CurveEnsemble::validate() const {
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (!(curves[i].basis() == basis)) throw ArgumentError("ensemble curves must share one basis");
    if (i > 0 && curves[i].year() <= curves[i - 1].year())
      throw ArgumentError("ensemble years must be strictly increasing");
  }
}

FourierCurve fit_year(const RawYearSeries& series, const FourierBasis& basis,
                      std::optional<std::span<const double>> weights) {
  const auto n = static_cast<Eigen::Index>(series.size());
  const int p = basis.count();
  if (n < p)
    throw NumericError("year " + std::to_string(series.year) + ": " + std::to_string(n) +
                       " samples cannot determine " + std::to_string(p) + " coefficients");
  if (weights && weights->size() != series.size())
    throw ArgumentError("weight count does not match sample count");

  const auto days = series.days();
  Eigen::MatrixXd design = design_matrix(basis, days).values;
  Eigen::VectorXd y(n);
  for (Eigen::Index j = 0; j < n; ++j) y(j) = series.samples[static_cast<std::size_t>(j)].area;

  if (weights) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = (*weights)[static_cast<std::size_t>(j)];
      if (!(w > 0.0) || !std::isfinite(w)) throw ArgumentError("weights must be positive and finite");
      const double root = std::sqrt(w);
      design.row(j) *= root;
      y(j) *= root;
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p)
    throw NumericError("year " + std::to_string(series.year) + ": design matrix has rank " +
                       std::to_string(qr.rank()) + " < " + std::to_string(p));
  const Eigen::VectorXd c = qr.solve(y);
  return FourierCurve(basis, std::vector<double>(c.data(), c.data() + c.size()), series.year);
}

double residual_mse(const RawYearSeries& series, const FourierCurve& curve) {
  if (series.samples.empty()) throw ArgumentError("residual MSE of an empty series");
  double sum = 0.0;
  for (const auto& s : series.samples) {
    const double e = s.area - curve(s.day);
    sum += e * e;
  }
  return sum / static_cast<double>(series.size());
}

CurveEnsemble smooth_dataset(const Dataset& dataset, const FourierBasis& basis, std::vector<double> grid) {
  CurveEnsemble out;
  out.basis = basis;
  out.grid = std::move(grid);
  out.curves.reserve(dataset.years.size());
  for (const auto& series : dataset.years) out.curves.push_back(fit_year(series, basis));
  return out;
}

std::vector<int> odd_values(int first, int last) {
  std::vector<int> out;
  for (int p = first % 2 ? first : first + 1; p <= last; p += 2) out.push_back(p);
  return out;
}

MseProfile mse_profile(const Dataset& dataset, std::span<const int> p_values, double period) {
  MseProfile profile;
  for (std::size_t i = 0; i < p_values.size(); ++i) {
    if (p_values[i] < 1 || p_values[i] % 2 == 0)
      throw ArgumentError("basis sizes must be odd and positive, got " + std::to_string(p_values[i]));
    if (i > 0 && p_values[i] <= p_values[i - 1]) throw ArgumentError("basis sizes must be strictly increasing");
  }

  for (int p : p_values) {
    const FourierBasis basis(p, period);
    double sum = 0.0;
    std::size_t used = 0;
    for (const auto& series : dataset.years) {
      if (series.size() < static_cast<std::size_t>(p)) {
        profile.warnings.push_back("year " + std::to_string(series.year) + " skipped at p=" + std::to_string(p) +
                                   ": only " + std::to_string(series.size()) + " samples");
        continue;
      }
      try {
        sum += residual_mse(series, fit_year(series, basis));
      } catch (const NumericError& e) {
        throw NumericError("MSE profile (year " + std::to_string(series.year) + ", p=" + std::to_string(p) +
                           "): " + e.what());
      }
      ++used;
    }
    if (used == 0) throw NumericError("MSE profile: no year has enough samples for p=" + std::to_string(p));
    profile.p_values.push_back(p);
    profile.mse_hat.push_back(sum / static_cast<double>(used));
  }
  for (std::size_t i = 1; i < profile.mse_hat.size(); ++i)
    profile.first_diff.push_back(profile.mse_hat[i] - profile.mse_hat[i - 1]);
  return profile;
}

BasisSelection select_basis_count(const MseProfile& profile, double flatness_tol) {
  const std::size_t m = profile.mse_hat.size();
  if (m < 3 || profile.p_values.size() != m || profile.first_diff.size() + 1 != m)
    throw ArgumentError("basis selection needs a profile with at least 3 entries");

  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double limit = flatness_tol * profile.mse_hat[i];
    bool flat = true;
    for (std::size_t j = i; j + 1 < m && flat; ++j) flat = std::abs(profile.first_diff[j]) <= limit;
    if (flat) return {profile.p_values[i], i, true};
  }
  return {profile.p_values.back(), m - 1, false};
}

}  // namespace fdband
