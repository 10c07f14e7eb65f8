#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "rsl/grid.hpp"

namespace rsl {

/// Trapezoidal approximation of the weighted integral
///     int_{r_lo}^{r_hi} r^{weight_exponent} * samples(r) dr
/// with the samples given on the grid nodes.  Off-node limits interpolate
/// the weighted product linearly, so the rule is exact whenever
/// r^w * samples(r) is piecewise linear between nodes.
inline double integrate_weighted(const Grid& g, std::span<const double> samples,
                                 double weight_exponent, double r_lo,
                                 double r_hi) {
  if (samples.size() != g.size())
    throw std::invalid_argument("integrate_weighted: sample length mismatch");
  if (!(r_lo < r_hi))
    throw std::invalid_argument("integrate_weighted: empty or inverted range");
  if (r_lo < g.nodes.front() - 1e-15 || r_hi > g.nodes.back() + 1e-15)
    throw std::invalid_argument("integrate_weighted: range outside grid span");

  auto weighted = [&](std::size_t i) {
    return std::pow(g[i], weight_exponent) * samples[i];
  };
  auto weighted_at = [&](double r) {
    const std::size_t i = g.lower_index(r);
    const std::size_t j = (i + 1 < g.size()) ? i + 1 : i;
    if (j == i) return weighted(i);
    const double t = (r - g[i]) / (g[j] - g[i]);
    return weighted(i) + t * (weighted(j) - weighted(i));
  };

  const std::size_t i0 = g.lower_index(r_lo);
  const std::size_t i1 = g.lower_index(r_hi);
  if (i0 == i1 || (i0 + 1 == i1 && g[i1] > r_hi)) {
    return 0.5 * (weighted_at(r_lo) + weighted_at(r_hi)) * (r_hi - r_lo);
  }

  double acc = 0.0;
  std::size_t first_full = i0;
  if (g[i0] < r_lo) {
    acc += 0.5 * (weighted_at(r_lo) + weighted(i0 + 1)) * (g[i0 + 1] - r_lo);
    first_full = i0 + 1;
  }
  std::size_t last_full = i1;
  for (std::size_t i = first_full; i < last_full; ++i)
    acc += 0.5 * (weighted(i) + weighted(i + 1)) * (g[i + 1] - g[i]);
  if (r_hi > g[i1])
    acc += 0.5 * (weighted(i1) + weighted_at(r_hi)) * (r_hi - g[i1]);
  return acc;
}

/// Per-interval integrals of tabulated data through a local cubic model in
/// log-abscissa: on [x_i, x_{i+1}] the function y -> x v(x) (y = ln x) is
/// interpolated by the Newton cubic through the four neighboring nodes and
/// integrated with two-point Gauss (exact for cubics).  Fourth order on
/// geometrically graded grids, and accurate for moderate power-law
/// integrands x^beta because (beta dy)^4 stays tiny at grid resolution.
inline std::vector<double> interval_integrals_log_cubic(
    std::span<const double> x, std::span<const double> v) {
  const std::size_t n = x.size();
  if (v.size() != n || n < 4)
    throw std::invalid_argument("interval_integrals_log_cubic: bad sizes");
  std::vector<double> y(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0))
      throw std::invalid_argument("interval_integrals_log_cubic: x must be > 0");
    y[i] = std::log(x[i]);
    g[i] = x[i] * v[i];
  }
  std::vector<double> out(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Four-point neighborhood clamped to the range.
    std::size_t j0 = (i == 0) ? 0 : i - 1;
    if (j0 + 3 >= n) j0 = n - 4;
    const double t0 = y[j0], t1 = y[j0 + 1], t2 = y[j0 + 2], t3 = y[j0 + 3];
    const double c0 = g[j0];
    const double c1 = (g[j0 + 1] - g[j0]) / (t1 - t0);
    const double d12 = (g[j0 + 2] - g[j0 + 1]) / (t2 - t1);
    const double c2 = (d12 - c1) / (t2 - t0);
    const double d23 = (g[j0 + 3] - g[j0 + 2]) / (t3 - t2);
    const double d123 = (d23 - d12) / (t3 - t1);
    const double c3 = (d123 - c2) / (t3 - t0);
    auto cubic = [&](double t) {
      return c0 + (t - t0) * (c1 + (t - t1) * (c2 + (t - t2) * c3));
    };
    const double lo = y[i], hi = y[i + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const double gauss = half / std::sqrt(3.0);
    out[i] = half * (cubic(mid - gauss) + cubic(mid + gauss));
  }
  return out;
}

/// Integral of tabulated positive (or negative) data under a local power-law
/// model: on each interval the integrand is taken as g0 (r/r0)^beta with
/// beta fitted from the endpoint values.  Exact for pure power integrands;
/// falls back to the trapezoid when the endpoint values change sign or
/// vanish.  Values are given at arbitrary increasing abscissae.
inline double integrate_powerfit(std::span<const double> x,
                                 std::span<const double> v) {
  if (x.size() != v.size() || x.size() < 2)
    throw std::invalid_argument("integrate_powerfit: bad sizes");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double x0 = x[i], x1 = x[i + 1];
    const double a = v[i], b = v[i + 1];
    if (a == 0.0 || b == 0.0 || (a > 0) != (b > 0)) {
      acc += 0.5 * (a + b) * (x1 - x0);
      continue;
    }
    const double ratio = x1 / x0;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
      acc += 0.5 * (a + b) * (x1 - x0);
      continue;
    }
    const double beta = std::log(b / a) / std::log(ratio);
    if (std::abs(beta + 1.0) < 1e-10) {
      acc += a * x0 * std::log(ratio);
    } else {
      acc += a * x0 * (std::pow(ratio, beta + 1.0) - 1.0) / (beta + 1.0);
    }
  }
  return acc;
}

}  // namespace rsl
