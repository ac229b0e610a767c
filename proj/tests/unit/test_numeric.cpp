#include <cmath>
#include <numbers>

#include "cforge/error.hpp"
#include "cforge/numeric.hpp"
#include "doctest.h"

using namespace cforge;

TEST_CASE("golden section") {
  const numeric::Minimum m = numeric::golden_section([](double x) { return (x - 0.3) * (x - 0.3); }, 0, 1);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(m.value < 1e-12);
}

TEST_CASE("grid plus golden section finds boundary and kinked minima") {
  CHECK(numeric::grid_golden_minimize([](double x) { return x; }, 0, 1).value == 0.0);
  CHECK(numeric::grid_golden_minimize([](double x) { return -x; }, 0, 1).x == 1.0);
  const auto kink = [](double x) { return std::abs(x - 0.61803) + 1.0; };
  const numeric::Minimum m = numeric::grid_golden_minimize(kink, 0, 1);
  CHECK(m.x == doctest::Approx(0.61803).epsilon(1e-9));
  // Two wells; the deeper one is narrow.
  const auto wells = [](double x) {
    return std::min((x - 0.2) * (x - 0.2), 1000 * (x - 0.77) * (x - 0.77) - 0.01);
  };
  CHECK(numeric::grid_golden_minimize(wells, 0, 1).x == doctest::Approx(0.77).epsilon(1e-6));
}

TEST_CASE("adaptive Simpson") {
  const numeric::Integral poly = numeric::adaptive_simpson([](double x) { return x * x * x; }, 0, 2, 1e-12);
  CHECK(poly.value == doctest::Approx(4.0).epsilon(1e-14));
  const numeric::Integral sine =
      numeric::adaptive_simpson([](double x) { return std::sin(x); }, 0, std::numbers::pi, 1e-10);
  CHECK(std::abs(sine.value - 2.0) < 1e-10);
  const numeric::Integral root = numeric::adaptive_simpson([](double x) { return std::sqrt(x); }, 0, 1, 1e-9);
  CHECK(std::abs(root.value - 2.0 / 3.0) < 1e-9);

  // A jump is integrated without error once the depth limit absorbs it.
  const auto step = [](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0; };
  const numeric::Integral jump = numeric::adaptive_simpson(step, 0, 1, 1e-9, 48, 4);
  CHECK(std::abs(jump.value - 2.0 / 3.0) < 1e-9);

  // A narrow bump between the samples of one panel is missed by a single
  // panel but found once the interval starts subdivided.
  const auto bump = [](double x) { return std::exp(-1e6 * (x - 0.37) * (x - 0.37)); };
  const double exact = std::sqrt(std::numbers::pi / 1e6);
  CHECK(std::abs(numeric::adaptive_simpson(bump, 0, 1, 1e-12, 48, 64).value - exact) < 1e-10);

  CHECK_THROWS_AS(numeric::adaptive_simpson([](double x) { return 1.0 / x; }, 0, 1, 1e-9), NumericalError);
}

TEST_CASE("root bracketing") {
  const auto f = [](double x) { return (x - 0.25) * (x - 0.6); };
  const std::vector<numeric::Root> roots = numeric::bracket_roots(f, 0, 1);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].x == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(roots[0].direction == -1);
  CHECK(roots[1].x == doctest::Approx(0.6).epsilon(1e-10));
  CHECK(roots[1].direction == 1);
  CHECK(numeric::bracket_roots([](double x) { return x * x + 1; }, 0, 1).empty());
  const std::vector<numeric::Root> node = numeric::bracket_roots([](double x) { return x - 0.5; }, 0, 1);
  REQUIRE(node.size() == 1);
  CHECK(node[0].x == 0.5);
  CHECK(numeric::bisect([](double x) { return x * x - 2; }, 0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
