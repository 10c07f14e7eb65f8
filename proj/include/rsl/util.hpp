#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "rsl/grid.hpp"

namespace rsl {

/// Piecewise-linear interpolation of samples on a grid, linear in log r.
/// Log-linear interpolation tracks power-law behaviour much better than
/// linear-in-r on geometric grids; it degrades gracefully to linear on
/// uniform grids because intervals are narrow there anyway.
inline double interp_loglin(const Grid& g, std::span<const double> v, double r) {
  if (r <= g.nodes.front()) return v.front();
  if (r >= g.nodes.back()) return v.back();
  const std::size_t i = g.lower_index(r);
  const double x0 = std::log(g.nodes[i]), x1 = std::log(g.nodes[i + 1]);
  const double t = (std::log(r) - x0) / (x1 - x0);
  return v[i] + t * (v[i + 1] - v[i]);
}

/// Least-squares slope of y against x.
inline double lsq_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw std::invalid_argument("lsq_slope: need two or more paired samples");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
  mx /= double(n); my /= double(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return 0.0;
  return sxy / sxx;
}

/// Aitken delta-squared extrapolation of the tail of a sequence.
/// Falls back to the last element when the increments are not contracting.
inline double aitken_limit(std::span<const double> a) {
  if (a.empty()) throw std::invalid_argument("aitken_limit: empty sequence");
  if (a.size() < 3) return a.back();
  const std::size_t n = a.size();
  const double d1 = a[n - 2] - a[n - 3];
  const double d2 = a[n - 1] - a[n - 2];
  const double dd = d2 - d1;
  const double scale = std::abs(a[n - 1]) + std::abs(d2) + 1e-300;
  if (std::abs(dd) < 1e-14 * scale) return a[n - 1];
  return a[n - 1] - d2 * d2 / dd;
}

/// Dyadic radii r0, r0/2, r0/4, ... staying >= floor.
inline std::vector<double> dyadic_radii(double r0, double floor_radius) {
  std::vector<double> out;
  for (double r = r0; r >= floor_radius; r *= 0.5) out.push_back(r);
  return out;
}

/// Slope of log(values) against log(radii); values must be positive.
inline double loglog_slope(std::span<const double> radii,
                           std::span<const double> values) {
  std::vector<double> lx, ly;
  lx.reserve(radii.size());
  ly.reserve(values.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    lx.push_back(std::log(radii[i]));
    ly.push_back(std::log(values[i]));
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return lsq_slope(lx, ly);
}

inline bool nearly_equal(double a, double b, double rel, double abs_tol = 0.0) {
  return std::abs(a - b) <= abs_tol + rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace rsl
