#include <catch2/catch_amalgamated.hpp>

#include "rsl/constants.hpp"
#include "rsl/grid.hpp"

using namespace rsl;

TEST_CASE("uniform grid hits both ends") {
  Grid g = build_grid(GridKind::uniform, 16, 0.5);
  REQUIRE(g.size() == 16);
  REQUIRE(g.nodes.front() == 0.5);
  REQUIRE(g.nodes.back() == 1.0);
  for (std::size_t i = 1; i < g.size(); ++i) REQUIRE(g[i] > g[i - 1]);
}

TEST_CASE("logarithmic grid places nodes geometrically") {
  // 17 nodes from 2^-16 to 1 must land on the powers of two exactly.
  Grid g = build_grid(GridKind::logarithmic, 17, std::pow(2.0, -16));
  for (int k = 0; k <= 16; ++k)
    REQUIRE_THAT(g[k], Catch::Matchers::WithinRel(std::pow(2.0, k - 16), 1e-13));
}

TEST_CASE("grid argument validation") {
  REQUIRE_THROWS_AS(build_grid(GridKind::logarithmic, 16, 1.5),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(build_grid(GridKind::logarithmic, 16, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(build_grid(GridKind::logarithmic, 15, 0.5),
                    std::invalid_argument);
}

TEST_CASE("hybrid grid is increasing and ends at 1") {
  Grid g = build_grid(GridKind::hybrid, 64, 1e-6);
  REQUIRE(g.nodes.front() == 1e-6);
  REQUIRE(g.nodes.back() == 1.0);
  for (std::size_t i = 1; i < g.size(); ++i) REQUIRE(g[i] > g[i - 1]);
}

TEST_CASE("dimension constants") {
  Constants c2 = make_constants(2);
  REQUIRE_THAT(c2.omega_n, Catch::Matchers::WithinRel(2.0 * M_PI, 1e-14));
  REQUIRE(c2.hardy_constant == 0.0);
  REQUIRE_THAT(c2.sharp_exponent, Catch::Matchers::WithinAbs(0.0, 1e-15));

  Constants c3 = make_constants(3);
  REQUIRE_THAT(c3.omega_n, Catch::Matchers::WithinRel(4.0 * M_PI, 1e-14));

  for (int n : {2, 3, 4, 6, 10, 11}) {
    Constants c = make_constants(n);
    REQUIRE_THAT(c.hardy_constant,
                 Catch::Matchers::WithinRel(0.25 * (n - 2.0) * (n - 2.0), 1e-14));
    REQUIRE_THAT(c.sharp_exponent,
                 Catch::Matchers::WithinAbs(c.gradient_exponent + 1.0, 1e-14));
  }
}

TEST_CASE("grid size env override is read") {
  // Only checks the default path; the env override is exercised in the CLI.
  REQUIRE(default_grid().size() >= 16);
  REQUIRE(default_grid().r_min() == 1e-6);
}
