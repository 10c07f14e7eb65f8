#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rsl/errors.hpp"

namespace rsl {

/// State for the radial second-order equation written as a first-order
/// system: y[0] = u, y[1] = u_r.
using State2 = std::array<double, 2>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double overflow_guard = 1e300;
  long max_steps = 4'000'000;
  double initial_step = 0.0;  // 0 = choose automatically
};

namespace detail {

// Dormand-Prince 5(4) tableau (FSAL).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                        c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// y5 - y4 error weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                        e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
inline constexpr double d1 = -12715105075.0 / 11282082432.0;
inline constexpr double d3 = 87487479700.0 / 32700410799.0;
inline constexpr double d4 = -10690763975.0 / 1880347072.0;
inline constexpr double d5 = 701980252875.0 / 199316789632.0;
inline constexpr double d6 = -1453857185.0 / 822651844.0;
inline constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace detail

/// One accepted step with its quartic interpolation polynomial.
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<std::array<double, 5>, 2> rc{};  // rcont per component

  double eval(int comp, double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    const auto& r = rc[comp];
    return r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
  }
};

/// Piecewise-polynomial solution record from an adaptive integration.
class OdeSolution {
 public:
  double t_begin = 0.0, t_end = 0.0;
  std::vector<DenseStep> steps;

  State2 eval(double t) const {
    const DenseStep& s = locate(t);
    return {s.eval(0, t), s.eval(1, t)};
  }
  double eval_component(int comp, double t) const {
    return locate(t).eval(comp, t);
  }

 private:
  const DenseStep& locate(double t) const {
    if (steps.empty()) throw error("OdeSolution: empty");
    const bool fwd = t_end >= t_begin;
    std::size_t lo = 0, hi = steps.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const double end = steps[mid].t0 + steps[mid].h;
      const bool before = fwd ? (t <= end) : (t >= end);
      if (before) hi = mid; else lo = mid + 1;
    }
    return steps[lo];
  }
};

/// Adaptive Dormand-Prince 5(4) with dense output.
///
/// rhs(t, y) -> dy/dt.  Integrates from t0 to t1 (either direction).  If an
/// event function is supplied, integration stops at its first zero crossing
/// (located on the dense interpolant) and the crossing time is recorded in
/// the return value's t_end.
template <typename Rhs>
OdeSolution integrate_ode(Rhs&& rhs, State2 y0, double t0, double t1,
                          const OdeOptions& opt = {},
                          const std::function<double(double, const State2&)>&
                              event = nullptr) {
  if (t0 == t1) throw std::invalid_argument("integrate_ode: empty span");
  const double dir = (t1 > t0) ? 1.0 : -1.0;

  OdeSolution sol;
  sol.t_begin = t0;
  sol.t_end = t1;

  State2 y = y0;
  double t = t0;
  State2 k1 = rhs(t, y);

  auto err_scale = [&](const State2& a, const State2& b, int i) {
    return opt.atol + opt.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
  };

  double h;
  if (opt.initial_step != 0.0) {
    h = dir * std::abs(opt.initial_step);
  } else {
    // Small fraction of the span, limited by the derivative magnitude.
    double sc = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double s = std::abs(k1[i]) / (opt.atol + opt.rtol * (1.0 + std::abs(y[i])));
      sc = std::max(sc, s);
    }
    h = dir * std::min(std::abs(t1 - t0) * 1e-3, (sc > 0) ? 0.01 / sc : std::abs(t1 - t0) * 1e-3);
    if (h == 0.0) h = dir * std::abs(t1 - t0) * 1e-6;
  }

  double ev_prev = event ? event(t, y) : 0.0;
  long nsteps = 0;

  while (dir * (t1 - t) > 0.0) {
    if (++nsteps > opt.max_steps)
      throw stiffness_error("integrate_ode: step budget exhausted");
    if (dir * (t + h - t1) > 0.0) h = t1 - t;
    if (std::abs(h) <= std::abs(t) * 1e-15 + 1e-290)
      throw stiffness_error("integrate_ode: step size underflow");

    using namespace detail;
    const State2 k2 = rhs(t + c2 * h, {y[0] + h * a21 * k1[0],
                                       y[1] + h * a21 * k1[1]});
    const State2 k3 = rhs(t + c3 * h,
                          {y[0] + h * (a31 * k1[0] + a32 * k2[0]),
                           y[1] + h * (a31 * k1[1] + a32 * k2[1])});
    const State2 k4 = rhs(t + c4 * h,
                          {y[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                           y[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])});
    const State2 k5 = rhs(
        t + c5 * h,
        {y[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
         y[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])});
    const State2 k6 = rhs(
        t + h, {y[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] +
                            a64 * k4[0] + a65 * k5[0]),
                y[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] +
                            a64 * k4[1] + a65 * k5[1])});
    State2 y1;
    for (int i = 0; i < 2; ++i)
      y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
    const State2 k7 = rhs(t + h, y1);

    double errnorm = 0.0;
    bool finite = std::isfinite(y1[0]) && std::isfinite(y1[1]);
    if (finite) {
      for (int i = 0; i < 2; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                              e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double s = e / err_scale(y, y1, i);
        errnorm += s * s;
      }
      errnorm = std::sqrt(0.5 * errnorm);
    } else {
      errnorm = 10.0;
    }

    if (errnorm > 1.0) {
      const double fac = std::max(0.2, 0.9 * std::pow(errnorm, -0.2));
      h *= fac;
      continue;
    }

    // Accepted: record the dense polynomial.
    DenseStep st;
    st.t0 = t;
    st.h = h;
    for (int i = 0; i < 2; ++i) {
      const double ydiff = y1[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      st.rc[i][0] = y[i];
      st.rc[i][1] = ydiff;
      st.rc[i][2] = bspl;
      st.rc[i][3] = ydiff - h * k7[i] - bspl;
      st.rc[i][4] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                         d6 * k6[i] + d7 * k7[i]);
    }
    sol.steps.push_back(st);

    const double t_new = t + h;
    if (std::abs(y1[0]) > opt.overflow_guard ||
        std::abs(y1[1]) > opt.overflow_guard)
      throw blow_up_error("integrate_ode: solution exceeded overflow guard");

    if (event) {
      const double ev_new = event(t_new, y1);
      if (ev_prev != 0.0 && (ev_new == 0.0 || (ev_prev > 0) != (ev_new > 0))) {
        // Bisect the crossing on the dense interpolant.
        double ta = t, tb = t_new;
        for (int it = 0; it < 90 && std::abs(tb - ta) >
                                        1e-14 * (std::abs(ta) + std::abs(tb)) +
                                            1e-300;
             ++it) {
          const double tm = 0.5 * (ta + tb);
          const State2 ym = {st.eval(0, tm), st.eval(1, tm)};
          const double em = event(tm, ym);
          if (em == 0.0 || (em > 0) == (ev_prev > 0)) ta = tm; else tb = tm;
        }
        sol.t_end = tb;
        return sol;
      }
      ev_prev = ev_new;
    }

    t = t_new;
    y = y1;
    k1 = k7;  // FSAL

    const double fac =
        std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2)));
    h *= fac;
  }
  sol.t_end = t;
  return sol;
}

}  // namespace rsl
