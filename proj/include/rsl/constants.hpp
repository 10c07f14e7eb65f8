#pragma once

#include <cmath>
#include <stdexcept>

namespace rsl {

/// Dimension-dependent constants used across the estimate checks.
struct Constants {
  int dimension = 0;
  double omega_n = 0.0;           ///< surface measure of the unit (N-1)-sphere
  double hardy_constant = 0.0;    ///< (N-2)^2/4
  double sharp_exponent = 0.0;    ///< -N/2 - sqrt(N-1) + 2
  double gradient_exponent = 0.0; ///< -N/2 - sqrt(N-1) + 1
  double lemma24_exponent = 0.0;  ///< N + 2 sqrt(N-1) - 1
};

inline double sphere_surface_measure(int n) {
  // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

inline double hardy_constant(int n) {
  return 0.25 * double(n - 2) * double(n - 2);
}

inline double sharp_exponent(int n) {
  return -0.5 * n - std::sqrt(double(n - 1)) + 2.0;
}

inline double gradient_exponent(int n) {
  return -0.5 * n - std::sqrt(double(n - 1)) + 1.0;
}

inline double lemma24_exponent(int n) {
  return double(n) + 2.0 * std::sqrt(double(n - 1)) - 1.0;
}

/// Critical power exponent of the semi-stable singular power family,
/// (N + 2 sqrt(N-1)) / (N + 2 sqrt(N-1) - 4).
inline double critical_power(int n) {
  const double q = double(n) + 2.0 * std::sqrt(double(n - 1));
  return q / (q - 4.0);
}

inline Constants make_constants(int n) {
  if (n < 2) throw std::invalid_argument("make_constants: dimension must be >= 2");
  Constants c;
  c.dimension = n;
  c.omega_n = sphere_surface_measure(n);
  c.hardy_constant = hardy_constant(n);
  c.sharp_exponent = sharp_exponent(n);
  c.gradient_exponent = gradient_exponent(n);
  c.lemma24_exponent = lemma24_exponent(n);
  return c;
}

}  // namespace rsl
