#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsl/grid.hpp"
#include "rsl/nonlinearity.hpp"
#include "rsl/util.hpp"

namespace rsl {

enum class Provenance { closed_form, integrated, tabulated };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form: return "closed-form";
    case Provenance::integrated: return "integrated";
    case Provenance::tabulated: return "tabulated";
  }
  return "unknown";
}

/// Sampled radial function on a grid: u and its radial derivative u_r,
/// together with the space dimension.  The central object every analysis
/// consumes.  Immutable after construction by convention.
struct RadialProfile {
  int dimension = 0;
  Grid grid;
  std::vector<double> u;
  std::vector<double> u_r;
  Provenance provenance = Provenance::tabulated;

  std::size_t size() const { return grid.size(); }

  double u_at(double r) const { return interp_loglin(grid, u, r); }
  double ur_at(double r) const { return interp_loglin(grid, u_r, r); }

  void validate() const {
    if (dimension < 2)
      throw std::invalid_argument("RadialProfile: dimension must be >= 2");
    if (u.size() != grid.size() || u_r.size() != grid.size())
      throw std::invalid_argument("RadialProfile: sample length mismatch");
  }
};

/// Samples u(r), u_r(r) from callables onto a grid.
inline RadialProfile make_closed_form_profile(
    int dimension, const Grid& grid, const std::function<double(double)>& u,
    const std::function<double(double)>& u_r) {
  RadialProfile p;
  p.dimension = dimension;
  p.grid = grid;
  p.u.reserve(grid.size());
  p.u_r.reserve(grid.size());
  for (double r : grid.nodes) {
    p.u.push_back(u(r));
    p.u_r.push_back(u_r(r));
  }
  p.provenance = Provenance::closed_form;
  p.validate();
  return p;
}

/// First derivative on a nonuniform grid: three-point stencil, one-sided at
/// the ends.  Exact for quadratics.
inline std::vector<double> derivative_on_grid(const Grid& g,
                                              const std::vector<double>& v) {
  const std::size_t n = g.size();
  if (v.size() != n || n < 3)
    throw std::invalid_argument("derivative_on_grid: bad sizes");
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = g[i] - g[i - 1], hp = g[i + 1] - g[i];
    const double dm = (v[i] - v[i - 1]) / hm;
    const double dp = (v[i + 1] - v[i]) / hp;
    d[i] = (hp * dm + hm * dp) / (hm + hp);
  }
  {
    const double h0 = g[1] - g[0], h1 = g[2] - g[1];
    d[0] = -(2 * h0 + h1) / (h0 * (h0 + h1)) * v[0] +
           (h0 + h1) / (h0 * h1) * v[1] - h0 / (h1 * (h0 + h1)) * v[2];
    const double hm = g[n - 2] - g[n - 3], hp = g[n - 1] - g[n - 2];
    d[n - 1] = hp / (hm * (hm + hp)) * v[n - 3] -
               (hm + hp) / (hm * hp) * v[n - 2] +
               (2 * hp + hm) / (hp * (hm + hp)) * v[n - 1];
  }
  return d;
}

/// Pointwise residual -u'' - ((N-1)/r) u' - f(u) with both derivatives taken
/// from finite differences on the grid (second derivative from the
/// three-point nonuniform stencil).  Endpoint entries reuse the adjacent
/// interior stencil and are first-order only; callers judging magnitudes
/// should restrict attention to interior nodes.
inline std::vector<double> residual(const RadialProfile& p,
                                    const Nonlinearity& nl) {
  p.validate();
  const Grid& g = p.grid;
  const std::size_t n = g.size();
  std::vector<double> res(n);
  // Divided-difference forms: exact for constants and linears even in
  // floating point, unlike the expanded coefficients.
  auto second = [&](std::size_t i) {
    const double hm = g[i] - g[i - 1], hp = g[i + 1] - g[i];
    const double dm = (p.u[i] - p.u[i - 1]) / hm;
    const double dp = (p.u[i + 1] - p.u[i]) / hp;
    return 2.0 * (dp - dm) / (hm + hp);
  };
  auto first = [&](std::size_t i) {
    const double hm = g[i] - g[i - 1], hp = g[i + 1] - g[i];
    const double dm = (p.u[i] - p.u[i - 1]) / hm;
    const double dp = (p.u[i + 1] - p.u[i]) / hp;
    return (hp * dm + hm * dp) / (hm + hp);
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    res[i] = -second(i) - (p.dimension - 1) / g[i] * first(i) - nl.f(p.u[i]);
  }
  res[0] = res[1];
  res[n - 1] = res[n - 2];
  return res;
}

/// Max over interior nodes of |residual| / (1 + |f(u)| + |u''| proxy),
/// with the finite-difference roundoff floor subtracted first: on the fine
/// end of a logarithmic grid the stencil amplifies the rounding of u by
/// 1/h^2, which says nothing about the profile.
inline double scaled_residual_norm(const RadialProfile& p,
                                   const Nonlinearity& nl) {
  const auto res = residual(p, nl);
  const Grid& g = p.grid;
  constexpr double eps = 2.2e-16;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double hm = g[i] - g[i - 1], hp = g[i + 1] - g[i];
    const double umax = std::max({std::abs(p.u[i - 1]), std::abs(p.u[i]),
                                  std::abs(p.u[i + 1])});
    const double noise =
        eps * umax * (4.0 / (hm * hp) + 2.0 * (p.dimension - 1) /
                                            (g[i] * std::min(hm, hp)));
    const double scale =
        1.0 + std::abs(nl.f(p.u[i])) +
        std::abs((p.dimension - 1) / g[i] * p.u_r[i]);
    const double excess = std::max(0.0, std::abs(res[i]) - 16.0 * noise);
    worst = std::max(worst, excess / scale);
  }
  return worst;
}

/// Number of sign changes of u_r strictly inside (0,1), counted on the grid.
/// Exact zeros are skipped, so a touch without crossing does not count.
inline int count_ur_zeros(const RadialProfile& p) {
  int count = 0;
  int last_sign = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (p.grid[i] >= 1.0) break;
    const double v = p.u_r[i];
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

/// Interpolated locations where u_r crosses zero strictly inside (0,1).
/// Uses the same log-linear rule as ur_at, so ur_at vanishes there.
inline std::vector<double> ur_zero_locations(const RadialProfile& p) {
  std::vector<double> zs;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = p.u_r[i], b = p.u_r[i + 1];
    if (a == 0.0 || a * b >= 0.0) continue;
    const double t = a / (a - b);
    const double lz =
        std::log(p.grid[i]) + t * (std::log(p.grid[i + 1]) - std::log(p.grid[i]));
    const double z = std::exp(lz);
    if (z > 0.0 && z < 1.0) zs.push_back(z);
  }
  return zs;
}

}  // namespace rsl
