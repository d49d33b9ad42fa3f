#pragma once

// Scalar building blocks of the Heisenberg closed forms, written so the
// removable singularities at c -> 0 and b -> 0 cancel analytically.

#include <cmath>

namespace mcplab::special {

inline constexpr double kSeriesCrossover = 0.05;

/// sin(c t) / c, equal to t at c = 0.
inline double sin_over(double c, double t) { return c == 0.0 ? t : std::sin(c * t) / c; }

/// (sin x - x cos x) / x^3, even, 1/3 at x = 0.
inline double phi(double x) {
  const double x2 = x * x;
  if (std::abs(x) < kSeriesCrossover)
    return 1.0 / 3 + x2 * (-1.0 / 30 + x2 * (1.0 / 840 + x2 * (-1.0 / 45360 + x2 / 3991680)));
  return (std::sin(x) - x * std::cos(x)) / (x2 * x);
}

/// (1 - x cot x) / x^2, even, 1/3 at x = 0; poles at x = k pi, k != 0.
inline double kappa(double x) {
  const double x2 = x * x;
  if (std::abs(x) < kSeriesCrossover)
    return 1.0 / 3 + x2 * (1.0 / 45 + x2 * (2.0 / 945 + x2 * (1.0 / 4725 + x2 * 2.0 / 93555)));
  return (1.0 - x * std::cos(x) / std::sin(x)) / x2;
}

/// c cot(c t), equal to 1/t at c = 0.
inline double c_cot(double c, double t) {
  const double x = c * t;
  if (std::abs(x) < kSeriesCrossover) return (1.0 - x * x * kappa(x)) / t;
  return c * std::cos(x) / std::sin(x);
}

}  // namespace mcplab::special
