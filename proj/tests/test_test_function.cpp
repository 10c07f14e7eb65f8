#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "rsl/grid.hpp"
#include "rsl/profile.hpp"
#include "rsl/test_function.hpp"

using namespace rsl;

namespace {

RadialProfile alpha_profile(int N, double a, const Grid& g) {
  return make_closed_form_profile(
      N, g, [a](double r) { return std::pow(r, a); },
      [a](double r) { return a * std::pow(r, a - 1.0); });
}

}  // namespace

TEST_CASE("eta0 matches its piecewise formula") {
  TestFunction f = build_eta0(0.1);
  REQUIRE_THAT(f.value_at(0.1), Catch::Matchers::WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(f.value_at(0.25), Catch::Matchers::WithinAbs(1.0, 1e-9));
  REQUIRE_THAT(f.value_at(0.375), Catch::Matchers::WithinAbs(0.5, 1e-9));
  REQUIRE_THAT(f.value_at(0.5), Catch::Matchers::WithinAbs(0.0, 1e-12));
  REQUIRE_THROWS_AS(build_eta0(0.3), std::invalid_argument);
}

TEST_CASE("power test function with sqrt(N-1) exponent, N=5") {
  TestFunction f = build_power_test_function(std::sqrt(4.0), 0.1, 0.2);
  REQUIRE_THAT(f.value_at(0.15), Catch::Matchers::WithinRel(0.15 * 0.15, 1e-9));
  // Continuity: adjacent sampled values differ by O(step).
  for (std::size_t i = 1; i < f.t.size(); ++i)
    REQUIRE(std::abs(f.eta[i] - f.eta[i - 1]) < 1e-2);
}

TEST_CASE("composite is continuous at both junctions and anchored at r") {
  Grid g = build_grid(GridKind::logarithmic, 4096, 1e-6);
  RadialProfile p = alpha_profile(10, -6.0, g);
  const double r = 1e-3, a = 0.1;
  TestFunction f = build_lemma24_composite(r, a, p);
  const double root = std::sqrt(9.0);

  REQUIRE_THAT(f.value_at(0.5 * r), Catch::Matchers::WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(f.value_at(r), Catch::Matchers::WithinRel(std::pow(r, root), 1e-6));
  REQUIRE_THAT(f.value_at(a * 1.0000001),
               Catch::Matchers::WithinRel(std::pow(a, root), 1e-4));
  REQUIRE_THAT(f.value_at(0.25),
               Catch::Matchers::WithinRel(std::pow(a, root), 1e-4));
  REQUIRE_THAT(f.value_at(0.5), Catch::Matchers::WithinAbs(0.0, 1e-12));

  // Leading piece against the closed-form ratio of power integrals:
  // int s^{2-2a} from r/2 to t over the same integral up to r.
  const double a_exp = -6.0;
  auto anti = [&](double s) { return std::pow(s, 3.0 - 2.0 * a_exp); };
  const double t_mid = 0.75 * r;
  const double expected = std::pow(r, root) * (anti(t_mid) - anti(0.5 * r)) /
                          (anti(r) - anti(0.5 * r));
  REQUIRE_THAT(f.value_at(t_mid), Catch::Matchers::WithinRel(expected, 1e-4));
}

TEST_CASE("composite rejects bad parameter ordering") {
  Grid g = build_grid(GridKind::logarithmic, 2048, 1e-5);
  RadialProfile p = alpha_profile(10, -6.0, g);
  REQUIRE_THROWS_AS(build_lemma24_composite(0.2, 0.1, p), std::invalid_argument);
  REQUIRE_THROWS_AS(build_lemma24_composite(0.01, 0.3, p), std::invalid_argument);
}

TEST_CASE("log tent peaks at the geometric center") {
  TestFunction f = build_log_tent(0.01, 0.04);
  REQUIRE_THAT(f.value_at(0.02), Catch::Matchers::WithinRel(1.0, 1e-9));
  REQUIRE_THAT(f.value_at(0.01), Catch::Matchers::WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(f.value_at(0.04), Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("support validation") {
  REQUIRE_THROWS_AS(build_power_test_function(1.0, 0.2, 0.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(build_tent(0.5, 1.0), std::invalid_argument);
}
