// Accurate complex exponentials used by the Fourier kernels.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace tpe::detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// exp(2 pi i k u) with k u reduced modulo 1 before scaling by 2 pi.
inline std::complex<double> unit_phase(int k, double u) {
  double x = static_cast<double>(k) * u;
  x -= std::floor(x);
  return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

/// exp(2 pi i k d) - 1 without cancellation for small |k d|.
inline std::complex<double> expm1_phase(int k, double d) {
  const double half = std::numbers::pi * static_cast<double>(k) * d;
  const double s = std::sin(half);
  const double c = std::cos(half);
  return {-2.0 * s * s, 2.0 * s * c};
}

/// sin(x) - x, series for small |x|.
inline double sin_minus_identity(double x) {
  if (std::abs(x) > 0.5) return std::sin(x) - x;
  const double x2 = x * x;
  double term = -x * x2 / 6.0;
  double sum = term;
  for (int n = 2; n < 12; ++n) {
    term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
    sum += term;
  }
  return sum;
}

/// exp(i theta) - 1 - i theta with theta = 2 pi k d, accurate when it is O(theta^2).
inline std::complex<double> expm1_phase_linear(int k, double d) {
  const double theta = kTwoPi * static_cast<double>(k) * d;
  const double s = std::sin(0.5 * theta);
  return {-2.0 * s * s, sin_minus_identity(theta)};
}

}  // namespace tpe::detail
