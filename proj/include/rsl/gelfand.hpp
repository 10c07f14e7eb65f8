#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rsl/errors.hpp"
#include "rsl/grid.hpp"
#include "rsl/nonlinearity.hpp"
#include "rsl/ode.hpp"
#include "rsl/profile.hpp"
#include "rsl/stability.hpp"

namespace rsl {

struct ShootResult {
  double first_zero = 0.0;  ///< R, first zero of the unscaled shot
  RadialProfile profile;    ///< u(r) = w(R r), a solution with u(1) = 0
};

/// Search horizon for the first zero of the outward shot.
inline constexpr double kShootHorizon = 1e6;

namespace detail {

/// Shifted shot variable y = w - m, so y(0) = 0 regardless of the center
/// value; the zero of w is the crossing y = -m.
struct ShiftedShotRhs {
  const Nonlinearity* g;
  double m;
  int dimension;
  State2 operator()(double s, const State2& y) const {
    return {y[1], -(dimension - 1) / s * y[1] - g->f(m + y[0])};
  }
};

/// Samples u(r) = m + y(R r) onto the grid from the dense output; below the
/// integration start the two-term center series takes over.
inline RadialProfile sample_shot(const OdeSolution& sol, double t_start,
                                 double zero_time, double m,
                                 double series_curvature, int dimension,
                                 const Grid& grid) {
  RadialProfile p;
  p.dimension = dimension;
  p.grid = grid;
  p.provenance = Provenance::integrated;
  p.u.resize(grid.size());
  p.u_r.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i] * zero_time;
    if (t <= t_start) {
      p.u[i] = m - series_curvature * t * t / (2.0 * dimension);
      p.u_r[i] = -series_curvature * t * zero_time / dimension;
    } else {
      const State2 y = sol.eval(t);
      p.u[i] = m + y[0];
      p.u_r[i] = y[1] * zero_time;
    }
  }
  return p;
}

inline void require_positive_on_range(const Nonlinearity& g, double lo,
                                      double hi) {
  for (int i = 0; i <= 32; ++i) {
    const double s = lo + (hi - lo) * double(i) / 32.0;
    if (!(g.f(s) > 0.0))
      throw invalid_nonlinearity("shoot_first_zero: g <= 0 at s = " +
                                 std::to_string(s));
  }
}

}  // namespace detail

/// Integrates w'' + ((N-1)/s) w' + g(w) = 0, w(0) = m, w'(0) = 0 outward to
/// the first zero R and returns the rescaled profile u(r) = w(R r), which
/// solves -Delta u = R^2 g(u) on the unit ball with u(1) = 0.
///
/// Exponential nonlinearities shoot the canonical shifted problem
/// (w = m + psi, s = t / sqrt(scale e^m), psi(0) = 0) so that arbitrarily
/// large center values stay inside double range.
inline ShootResult shoot_first_zero(const Nonlinearity& g, double m,
                                    int dimension, const Grid& grid) {
  if (!(m >= 0.0) || !std::isfinite(m))
    throw std::invalid_argument("shoot_first_zero: need finite m >= 0");
  if (dimension < 2)
    throw std::invalid_argument("shoot_first_zero: dimension must be >= 2");

  ShootResult out;
  if (m == 0.0) {
    // Degenerate shot: the zero sits at the center.
    out.first_zero = 0.0;
    out.profile = make_closed_form_profile(
        dimension, grid, [](double) { return 0.0; }, [](double) { return 0.0; });
    out.profile.provenance = Provenance::integrated;
    return out;
  }

  detail::require_positive_on_range(g, 0.0, m);
  const auto* expo = std::get_if<ExponentialFn>(&g.variant());
  OdeOptions opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-12;
  auto event = [&](double, const State2& y) { return y[0] + m; };

  if (expo != nullptr) {
    // Canonical problem psi'' + ((N-1)/t) psi' + e^psi = 0, psi(0) = 0,
    // integrated in log time: with y = ln t and phi = psi + 2y,
    //   phi'' + (N-2) phi' + e^phi - 2(N-2) = 0,
    // which keeps every quantity O(1) out to arbitrarily late crossings
    // (the direct form hits denormals once e^psi underflows).  Then
    // w = m + psi(t), t = s * kappa, kappa = sqrt(scale * e^m).
    const int N = dimension;
    auto rhs = [N](double, const State2& y) {
      return State2{y[1],
                    -(N - 2) * y[1] - std::exp(y[0]) + 2.0 * (N - 2)};
    };
    const double t0 = 1e-4;
    const double y0 = std::log(t0);
    const State2 phi0 = {-t0 * t0 / (2.0 * N) + 2.0 * y0,
                         -t0 * t0 / N + 2.0};
    const double log_kappa = 0.5 * (m + std::log(expo->scale));
    const double y1 = std::log(kShootHorizon) + log_kappa;
    auto log_event = [&](double y, const State2& st) {
      return st[0] + m - 2.0 * y;  // psi + m
    };
    const OdeSolution sol = integrate_ode(rhs, phi0, y0, y1, opt, log_event);
    const double Y = sol.t_end;
    if (!(Y < y1) ||
        std::abs(sol.eval_component(0, Y) + m - 2.0 * Y) > 1e-6 * m)
      throw no_zero_found("shoot_first_zero: no zero before the horizon");
    out.first_zero = std::exp(Y - log_kappa);

    RadialProfile p;
    p.dimension = N;
    p.grid = grid;
    p.provenance = Provenance::integrated;
    p.u.resize(grid.size());
    p.u_r.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double yr = Y + std::log(grid[i]);
      if (yr <= y0) {
        const double t = std::exp(yr);
        p.u[i] = m - t * t / (2.0 * N);
        // u_r = T psi'(T r) with T r = t: psi' = -t/N near the center.
        p.u_r[i] = -t * t / (N * grid[i]);
      } else {
        const State2 st = sol.eval(yr);
        p.u[i] = m + st[0] - 2.0 * yr;
        // u_r(r) = T psi'(T r) = (phi' - 2)/r.
        p.u_r[i] = (st[1] - 2.0) / grid[i];
      }
    }
    out.profile = std::move(p);
    return out;
  }

  const double gm = g.f(m);
  double s0 = std::min(1e-3, std::sqrt(2.0 * dimension * 1e-9 *
                                       std::max(1.0, std::abs(m)) /
                                       std::max(gm, 1e-300)));
  while (gm * s0 * s0 / (2.0 * dimension) >= m && s0 > 1e-300) s0 *= 0.1;
  detail::ShiftedShotRhs rhs{&g, m, dimension};
  const State2 y0 = {-gm * s0 * s0 / (2.0 * dimension), -gm * s0 / dimension};
  const OdeSolution sol = integrate_ode(rhs, y0, s0, kShootHorizon, opt, event);
  const double R = sol.t_end;
  if (!(R < kShootHorizon) || std::abs(sol.eval_component(0, R) + m) > 1e-9 * m)
    throw no_zero_found("shoot_first_zero: w stayed positive up to the horizon");
  out.first_zero = R;
  out.profile = detail::sample_shot(sol, s0, R, m, gm, dimension, grid);
  return out;
}

struct BranchPoint {
  double m = 0.0;         ///< center value u(0)
  double first_zero = 0.0;///< R of the unscaled shot
  double lambda = 0.0;    ///< R^2
  double sup_norm = 0.0;  ///< equals m for positive decreasing profiles
  double lambda1 = 0.0;   ///< principal eigenvalue of the linearization
};

struct BifurcationDiagram {
  std::string g_descriptor;
  int dimension = 0;
  std::vector<BranchPoint> points;           ///< ordered by m
  double lambda_star_estimate = 0.0;         ///< max lambda over the sweep
  std::vector<std::string> warnings;         ///< skipped points etc.
};

/// Geometric default sweep of center values.
inline std::vector<double> default_m_grid(double lo = 1e-2, double hi = 1e3,
                                          std::size_t count = 200) {
  std::vector<double> m(count);
  for (std::size_t i = 0; i < count; ++i)
    m[i] = lo * std::pow(hi / lo, double(i) / double(count - 1));
  return m;
}

/// One shot per center value; each branch point carries the principal
/// eigenvalue of -Delta - lambda g'(u) on the sampled profile.  Failed
/// shots are skipped and flagged.
inline BifurcationDiagram minimal_branch(const Nonlinearity& g, int dimension,
                                         const std::vector<double>& m_grid,
                                         const Grid& grid,
                                         bool with_eigenvalues = true) {
  for (std::size_t i = 1; i < m_grid.size(); ++i)
    if (!(m_grid[i] > m_grid[i - 1]) || !(m_grid[0] > 0.0))
      throw std::invalid_argument("minimal_branch: m_grid must be positive increasing");

  BifurcationDiagram d;
  d.g_descriptor = g.describe();
  d.dimension = dimension;
  for (double m : m_grid) {
    try {
      const ShootResult shot = shoot_first_zero(g, m, dimension, grid);
      BranchPoint pt;
      pt.m = m;
      pt.first_zero = shot.first_zero;
      pt.lambda = shot.first_zero * shot.first_zero;
      pt.sup_norm = m;
      if (with_eigenvalues) {
        pt.lambda1 = principal_eigenvalue(shot.profile, g.scaled(pt.lambda),
                                          grid.r_min());
      }
      d.points.push_back(pt);
      d.lambda_star_estimate = std::max(d.lambda_star_estimate, pt.lambda);
    } catch (const error& e) {
      d.warnings.push_back("m=" + std::to_string(m) + ": " + e.what());
    }
  }
  return d;
}

inline BifurcationDiagram minimal_branch(const Nonlinearity& g, int dimension,
                                         const std::vector<double>& m_grid) {
  return minimal_branch(g, dimension, m_grid, default_grid());
}

struct LambdaStar {
  double estimate = 0.0;
  double maximizer_m = 0.0;
  bool monotone = false;  ///< lambda increased across the whole sweep
};

/// Supremum of lambda over a sweep.  A monotone sweep means the fold was
/// not bracketed, so the estimate is only a lower bound; callers see that
/// through the flag.
inline LambdaStar lambda_star(const BifurcationDiagram& d) {
  if (d.points.empty())
    throw std::invalid_argument("lambda_star: empty diagram");
  LambdaStar out;
  out.monotone = true;
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    if (d.points[i].lambda > out.estimate) {
      out.estimate = d.points[i].lambda;
      out.maximizer_m = d.points[i].m;
    }
    if (i > 0 && d.points[i].lambda <= d.points[i - 1].lambda)
      out.monotone = false;
  }
  return out;
}

struct EnergyCondition {
  double liminf_estimate = 0.0;
  bool satisfied = false;
};

/// Tail minimum of u g'(u)/g(u) along an increasing probe; values above 1
/// certify that the extremal solution lies in the energy class.  Probe
/// points where g leaves double range are dropped (fast-growing g overflows
/// long before the ratio stops being informative).
inline EnergyCondition bv_energy_condition(const Nonlinearity& g,
                                           const std::vector<double>& probe) {
  if (probe.size() < 4)
    throw std::invalid_argument("bv_energy_condition: probe too short");
  for (std::size_t i = 1; i < probe.size(); ++i)
    if (!(probe[i] > probe[i - 1]))
      throw std::invalid_argument("bv_energy_condition: probe must increase");
  std::vector<double> ratio;
  ratio.reserve(probe.size());
  for (double u : probe) {
    const double gu = g.f(u);
    const double gpu = g.fprime(u);
    if (!std::isfinite(gu) || !std::isfinite(gpu)) continue;
    if (!(gu != 0.0))
      throw invalid_nonlinearity("bv_energy_condition: g vanishes on the probe");
    ratio.push_back(u * gpu / gu);
  }
  if (ratio.size() < 4)
    throw std::invalid_argument(
        "bv_energy_condition: too few probe points inside double range");
  const std::size_t tail = std::max<std::size_t>(3, ratio.size() / 4);
  EnergyCondition out;
  out.liminf_estimate = *std::min_element(ratio.end() - tail, ratio.end());
  out.satisfied = out.liminf_estimate > 1.01;
  return out;
}

}  // namespace rsl
