// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent reference computations used only by tests. None of these call
// into the library's solvers or derivative code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fdband::oracle {

/// phi_k(t) written out directly from the three-case definition.
inline double basis_value(int k, double t, double period = 365.0) {
  const double omega = 2.0 * std::numbers::pi / period;
  if (k == 1) return 1.0;
  if (k % 2 == 0) return std::sin((k / 2) * omega * t);
  return std::cos(((k - 1) / 2) * omega * t);
}

/// Least squares through the normal equations (X'WX) c = X'Wy, solved by a
/// hand-written Cholesky factorisation.
inline std::vector<double> normal_equations_fit(const std::vector<double>& days, const std::vector<double>& y, int p,
                                                const std::vector<double>& weights = {}, double period = 365.0) {
  const std::size_t n = days.size();
  std::vector<double> gram(static_cast<std::size_t>(p * p), 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(p), 0.0);
  std::vector<double> row(static_cast<std::size_t>(p));
  for (std::size_t j = 0; j < n; ++j) {
    const double w = weights.empty() ? 1.0 : weights[j];
    for (int k = 0; k < p; ++k) row[k] = basis_value(k + 1, days[j], period);
    for (int a = 0; a < p; ++a) {
      rhs[a] += w * row[a] * y[j];
      for (int b = 0; b < p; ++b) gram[a * p + b] += w * row[a] * row[b];
    }
  }
  // Cholesky: gram = L L'
  std::vector<double> L(static_cast<std::size_t>(p * p), 0.0);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = gram[i * p + j];
      for (int k = 0; k < j; ++k) s -= L[i * p + k] * L[j * p + k];
      if (i == j) {
        if (s <= 0) throw std::runtime_error("normal equations not positive definite");
        L[i * p + i] = std::sqrt(s);
      } else {
        L[i * p + j] = s / L[j * p + j];
      }
    }
  std::vector<double> z(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    double s = rhs[i];
    for (int k = 0; k < i; ++k) s -= L[i * p + k] * z[k];
    z[i] = s / L[i * p + i];
  }
  std::vector<double> c(static_cast<std::size_t>(p));
  for (int i = p - 1; i >= 0; --i) {
    double s = z[i];
    for (int k = i + 1; k < p; ++k) s -= L[k * p + i] * c[k];
    c[i] = s / L[i * p + i];
  }
  return c;
}

inline double central_difference(const std::function<double(double)>& f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

/// Closed form of sum_{t=1}^{n} sin(a t) and cos(a t).
inline double sine_sum(double a, int n) {
  return std::sin(a * n / 2.0) * std::sin(a * (n + 1) / 2.0) / std::sin(a / 2.0);
}
inline double cosine_sum(double a, int n) {
  return std::sin(a * n / 2.0) * std::cos(a * (n + 1) / 2.0) / std::sin(a / 2.0);
}

/// Small LCG + Box-Muller, independent of the library's generators.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed * 2862933555777941757ULL + 3037000493ULL) {}
  double uniform() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return (static_cast<double>(state_ >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    return std::sqrt(-2.0 * std::log(uniform())) * std::cos(2.0 * std::numbers::pi * uniform());
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

}  // namespace fdband::oracle
