#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "rsl/catalog.hpp"
#include "rsl/gelfand.hpp"
#include "rsl/grid.hpp"
#include "rsl/integrate.hpp"

using namespace rsl;

namespace {

const Grid& grid2048() {
  static Grid g = build_grid(GridKind::logarithmic, 2048, 1e-6);
  return g;
}

// Closed-form disk branch: lambda(m) with m = 2 log(1+b).
double liouville_lambda_of_m(double m) {
  const double b = std::expm1(0.5 * m);
  return 8.0 * b / ((1.0 + b) * (1.0 + b));
}

}  // namespace

TEST_CASE("constant source shoots the exact quadratic") {
  const double m = 2.0;
  const int N = 3;
  ShootResult shot =
      shoot_first_zero(Nonlinearity::constant(1.0), m, N, grid2048());
  REQUIRE_THAT(shot.first_zero,
               Catch::Matchers::WithinRel(std::sqrt(2.0 * N * m), 1e-9));
  // Rescaled profile is m (1 - r^2).
  for (double r : {0.1, 0.5, 0.9}) {
    REQUIRE_THAT(shot.profile.u_at(r),
                 Catch::Matchers::WithinRel(m * (1.0 - r * r), 1e-4));
  }
  REQUIRE_THAT(shot.profile.u.back(), Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("exponential shots reproduce the disk closed form") {
  for (double b : {0.5, 1.0, 3.0}) {
    const double m = 2.0 * std::log1p(b);
    ShootResult shot =
        shoot_first_zero(Nonlinearity::exponential(1.0), m, 2, grid2048());
    const double lambda = shot.first_zero * shot.first_zero;
    REQUIRE_THAT(lambda,
                 Catch::Matchers::WithinRel(8.0 * b / ((1 + b) * (1 + b)), 1e-8));
    // And the whole profile matches 2log(1+b) - 2log(1+b r^2).
    for (double r : {1e-4, 0.03, 0.4, 0.99}) {
      const double exact = 2.0 * std::log1p(b) - 2.0 * std::log1p(b * r * r);
      REQUIRE_THAT(shot.profile.u_at(r), Catch::Matchers::WithinAbs(exact, 1e-4));
    }
  }
}

TEST_CASE("huge center values stay inside double range") {
  ShootResult shot =
      shoot_first_zero(Nonlinearity::exponential(1.0), 1000.0, 10, grid2048());
  const double lambda = shot.first_zero * shot.first_zero;
  // Far along the branch lambda has settled at 2(N-2).
  REQUIRE_THAT(lambda, Catch::Matchers::WithinRel(16.0, 1e-6));
  REQUIRE(std::isfinite(shot.profile.u.front()));
  // Near the origin the profile follows the singular candidate -2 log r.
  const double expected = -2.0 * std::log(1e-3) + std::log(16.0 / lambda);
  REQUIRE_THAT(shot.profile.u_at(1e-3), Catch::Matchers::WithinAbs(expected, 0.05));
}

TEST_CASE("no zero before the horizon raises") {
  REQUIRE_THROWS_AS(
      shoot_first_zero(Nonlinearity::constant(1e-15), 1e6, 3, grid2048()),
      no_zero_found);
}

TEST_CASE("nonpositive g is rejected") {
  REQUIRE_THROWS_AS(
      shoot_first_zero(Nonlinearity::constant(-1.0), 1.0, 3, grid2048()),
      invalid_nonlinearity);
  Nonlinearity crossing =
      Nonlinearity::tabulated({0.0, 1.0}, {1.0, -0.5}, {-1.5, -1.5});
  REQUIRE_THROWS_AS(shoot_first_zero(crossing, 1.0, 3, grid2048()),
                    invalid_nonlinearity);
}

TEST_CASE("branch sweep on the disk follows the closed-form oracle") {
  std::vector<double> m_grid;
  for (double m = 0.05; m <= 8.0; m *= 1.15) m_grid.push_back(m);
  BifurcationDiagram d =
      minimal_branch(Nonlinearity::exponential(1.0), 2, m_grid, grid2048());
  REQUIRE(d.points.size() == m_grid.size());
  for (const BranchPoint& pt : d.points) {
    REQUIRE_THAT(pt.lambda,
                 Catch::Matchers::WithinRel(liouville_lambda_of_m(pt.m), 1e-7));
    REQUIRE(pt.sup_norm == pt.m);
  }
  LambdaStar star = lambda_star(d);
  REQUIRE_THAT(star.estimate, Catch::Matchers::WithinAbs(2.0, 0.02));
  REQUIRE_THAT(star.maximizer_m,
               Catch::Matchers::WithinAbs(2.0 * std::log(2.0), 0.2));
  REQUIRE_FALSE(star.monotone);

  // Minimal-branch points (below the fold) are semi-stable.
  for (const BranchPoint& pt : d.points) {
    if (pt.m < star.maximizer_m)
      REQUIRE(pt.lambda1 >= -1e-6 * (1.0 + std::abs(pt.lambda1)));
  }
  // The upper branch beyond the fold shows negative principal eigenvalues.
  bool saw_negative = false;
  for (const BranchPoint& pt : d.points)
    if (pt.m > star.maximizer_m + 0.5 && pt.lambda1 < 0.0) saw_negative = true;
  REQUIRE(saw_negative);
}

TEST_CASE("linear-in-m branch for g = 1 is monotone with no interior max") {
  std::vector<double> m_grid{0.5, 1.0, 2.0, 4.0, 8.0};
  BifurcationDiagram d = minimal_branch(Nonlinearity::constant(1.0), 4, m_grid,
                                        grid2048(), false);
  LambdaStar star = lambda_star(d);
  REQUIRE(star.monotone);
  REQUIRE_THAT(star.estimate, Catch::Matchers::WithinRel(8.0 * 8.0, 1e-8));
  for (const BranchPoint& pt : d.points)
    REQUIRE_THAT(pt.lambda, Catch::Matchers::WithinRel(8.0 * pt.m, 1e-8));
}

TEST_CASE("scaling consistency: rescaled profiles solve the lambda-scaled problem") {
  for (double m : {0.7, 1.8}) {
    ShootResult shot =
        shoot_first_zero(Nonlinearity::exponential(1.0), m, 2, grid2048());
    const double lambda = shot.first_zero * shot.first_zero;
    RadialProfile re = integrate_regular_ivp(
        Nonlinearity::exponential(lambda), m, 2, grid2048());
    REQUIRE_THAT(re.u.back(), Catch::Matchers::WithinAbs(0.0, 1e-6));
  }
}

TEST_CASE("energy condition ratios") {
  std::vector<double> probe;
  for (double u = 1.0; u <= 1e6; u *= 2.0) probe.push_back(u);

  EnergyCondition exp_cond =
      bv_energy_condition(Nonlinearity::exponential(1.0), probe);
  REQUIRE(exp_cond.satisfied);  // ratio = u, unbounded

  EnergyCondition pow_cond =
      bv_energy_condition(Nonlinearity::power(3.0, 1.0), probe);
  REQUIRE(pow_cond.satisfied);
  REQUIRE_THAT(pow_cond.liminf_estimate, Catch::Matchers::WithinRel(3.0, 1e-4));

  // g = 1 + u sits exactly at the failing boundary.
  Nonlinearity affine =
      Nonlinearity::tabulated({0.0, 1e7}, {1.0, 1.0 + 1e7}, {1.0, 1.0});
  EnergyCondition affine_cond = bv_energy_condition(affine, probe);
  REQUIRE_FALSE(affine_cond.satisfied);
  REQUIRE_THAT(affine_cond.liminf_estimate,
               Catch::Matchers::WithinRel(1.0, 1e-4));

  REQUIRE_THROWS_AS(bv_energy_condition(Nonlinearity::constant(0.0), probe),
                    invalid_nonlinearity);
}
