#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "rsl/grid.hpp"
#include "rsl/integrate.hpp"
#include "rsl/nonlinearity.hpp"
#include "rsl/profile.hpp"

using namespace rsl;

TEST_CASE("f = 0 keeps the center value flat") {
  Grid g = build_grid(GridKind::logarithmic, 512, 1e-5);
  RadialProfile p = integrate_regular_ivp(Nonlinearity::zero(), 3.0, 5, g);
  for (std::size_t i = 0; i < p.size(); ++i) {
    REQUIRE_THAT(p.u[i], Catch::Matchers::WithinRel(3.0, 1e-12));
    REQUIRE_THAT(p.u_r[i], Catch::Matchers::WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("constant source gives the exact quadratic") {
  const double c = 6.0;
  const double m = 1.0;
  const int N = 3;
  Grid g = build_grid(GridKind::logarithmic, 512, 1e-5);
  RadialProfile p = integrate_regular_ivp(Nonlinearity::constant(c), m, N, g);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = g[i];
    REQUIRE_THAT(p.u[i],
                 Catch::Matchers::WithinAbs(m - c * r * r / (2.0 * N), 1e-10));
  }
}

TEST_CASE("exponential source in 2d matches the disk branch closed form") {
  // With unit scale and center value 0 the solution is -2 log(1 + r^2/8).
  Grid g = build_grid(GridKind::logarithmic, 1024, 1e-5);
  RadialProfile p = integrate_regular_ivp(Nonlinearity::exponential(1.0), 0.0, 2, g);
  REQUIRE_THAT(p.u.back(),
               Catch::Matchers::WithinAbs(-2.0 * std::log(9.0 / 8.0), 1e-9));
}

TEST_CASE("inward: harmonic radial solutions in 2d and high d") {
  Grid g = build_grid(GridKind::logarithmic, 2048, 1e-6);

  RadialProfile log2d = integrate_inward(Nonlinearity::zero(), 0.0, -1.0, 2, g);
  for (double r : {1e-6, 1e-3, 0.5}) {
    REQUIRE_THAT(log2d.u_at(r), Catch::Matchers::WithinRel(-std::log(r), 1e-7));
  }

  const int N = 5;
  RadialProfile fund =
      integrate_inward(Nonlinearity::zero(), 0.0, 2.0 - N, N, g);
  // Node values carry only the integrator error, no interpolation.
  for (std::size_t i = 0; i + 1 < fund.size(); i += 100) {
    const double exact = std::pow(g[i], 2.0 - N) - 1.0;
    REQUIRE_THAT(fund.u[i], Catch::Matchers::WithinRel(exact, 1e-6));
  }
}

TEST_CASE("inward reproduces the alpha family across six decades") {
  const int N = 10;
  const double a = -6.0;
  Grid g = build_grid(GridKind::logarithmic, 2048, 1e-6);
  RadialProfile p =
      integrate_inward(Nonlinearity::alpha_family(a, N), 1.0, a, N, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double exact = std::pow(g[i], a);
    worst = std::max(worst, std::abs(p.u[i] - exact) / exact);
  }
  REQUIRE(worst < 1e-6);
}

TEST_CASE("regular IVP followed by residual stays small") {
  Grid g = build_grid(GridKind::logarithmic, 2048, 1e-5);
  for (const Nonlinearity& nl :
       {Nonlinearity::exponential(1.0), Nonlinearity::power(3.0, 0.5),
        Nonlinearity::constant(2.0), Nonlinearity::zero()}) {
    RadialProfile p = integrate_regular_ivp(nl, 0.5, 4, g);
    REQUIRE(scaled_residual_norm(p, nl) < 1e-4);
  }
}

TEST_CASE("blow-up detection") {
  // f(u) = -k^2 u makes the equation u'' ~ k^2 u: exponential runaway that
  // crosses the overflow guard well inside the unit interval.
  Grid g = build_grid(GridKind::uniform, 64, 1e-3);
  Nonlinearity runaway =
      Nonlinearity::tabulated({0.0, 1e301}, {0.0, -1e307}, {-1e6, -1e6});
  REQUIRE_THROWS_AS(integrate_regular_ivp(runaway, 1.0, 3, g), blow_up_error);
}
