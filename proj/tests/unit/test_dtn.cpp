#include <cmath>

#include "cforge/dtn.hpp"
#include "cforge/error.hpp"
#include "doctest.h"

using namespace cforge;

namespace {

long double age(long double x, long double mu, long double lambda) {
  return std::log((x * lambda + mu) / mu) / (x * lambda);
}

// Least push rate meeting the age budget, by bisection on the constraint.
long double least_rate(long double x, long double lambda, long double g) {
  long double lo = 1e-300L, hi = 1.0L;
  while (age(x, hi, lambda) > g) hi *= 2;
  for (int i = 0; i < 400; ++i) {
    const long double mid = std::sqrt(lo * hi) > 0 && hi / lo > 4 ? std::sqrt(lo * hi) : (lo + hi) / 2;
    (age(x, mid, lambda) > g ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

TEST_CASE("age and outage formulas") {
  CHECK(dtn::expected_age(0.4, 1e12, 1.0) < 1e-11);
  CHECK(dtn::expected_age(0.5, 1.0, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(dtn::outage_probability(0.5, 1.0, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dtn::outage_probability(0.5, 1.0, 2.0, 200.0) < 1e-80);
  const long double closed = 2.0L / (1.0L + std::exp(6.0L));
  CHECK(std::abs(dtn::outage_probability(0.5, 1.0, 2.0, 3.0) - static_cast<double>(closed)) < 1e-16);
  CHECK_THROWS_AS(dtn::expected_age(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("the optimal push rate binds the age budget") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double g : {1.0, 5.0, 10.0}) {
      for (double x : {0.05, 0.4, 0.7, 1.0}) {
        CAPTURE(lambda);
        CAPTURE(g);
        CAPTURE(x);
        const double mu = dtn::optimal_push_rate(x, lambda, g);
        CHECK(std::abs(dtn::expected_age(x, mu, lambda) - g) <= 1e-10 * g);
      }
    }
  }
  CHECK(dtn::expected_age(0.4, dtn::optimal_push_rate(0.4, 1.0, 5.0), 1.0) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("cost curve") {
  const Curve c = dtn::cost_curve({1.0, 5.0, 10.0, 0.0});
  CHECK(c(0.0) == 0.0);
  CHECK(c(1e-9) < 1e-9);
  const double oracle = static_cast<double>(0.7L * least_rate(0.7L, 1.0L, 5.0L));
  CHECK(std::abs(c(0.7) - oracle) < 1e-8);
  CHECK(dtn::push_cost(0.0, 1.0, 5.0) == 0.0);
  for (int k = 0; k <= 20; ++k) CHECK(c(k / 20.0) >= 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((dtn::DtnParams{0.0, 1.0, 1.0, 0.0}.validate()), InputError);
  CHECK_THROWS_AS((dtn::DtnParams{1.0, 1.0, 1.0, 1.5}.validate()), InputError);
  CHECK(dtn::free_fraction({1, 5, 10, 0.4}, {1, 10, 20, 0.3}) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(dtn::free_fraction({1, 5, 10, 0.7}, {1, 10, 20, 0.6}), InputError);
  CHECK_THROWS_AS(dtn::free_fraction({1, 5, 10, 0.5}, {1, 10, 20, 0.5}), InputError);
}

TEST_CASE("two providers competing for free users") {
  const dtn::ScenarioReport r = dtn::scenario_report({1, 5, 10, 0.4}, {1, 10, 20, 0.3});
  CHECK(r.free == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(r.ad.equilibrium.outcome == SplitOutcome::monopoly_first);
  CHECK(r.chi.equilibrium.outcome == SplitOutcome::monopoly_first);
  CHECK(r.ad.p_share == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.chi.p_share == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.ad.q_share == 0.0);
  CHECK(r.chi_pays_peers_more);
  CHECK(r.chi.equilibrium.peer_payoff >= r.ad.equilibrium.peer_payoff);

  // Identical providers on a convex stretch of the cost split the free users.
  const dtn::DtnParams convex{1, 10, 20, 0.4};
  const dtn::ScenarioOutcome even = dtn::scenario(convex, convex, ValueKind::ad);
  CHECK(even.equilibrium.outcome == SplitOutcome::interior);
  CHECK(even.p_share == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(even.q_share == doctest::Approx(0.1).epsilon(1e-6));

  // Where the cost is concave over the free users the even split repels and
  // one provider takes everything.
  const dtn::DtnParams concave{1, 5, 10, 0.2};
  const dtn::ScenarioOutcome tip = dtn::scenario(concave, concave, ValueKind::ad);
  CHECK(tip.equilibrium.outcome == SplitOutcome::monopoly_first);
  REQUIRE(tip.equilibrium.unstable_roots.size() == 1);
  CHECK(tip.equilibrium.unstable_roots[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(tip.p_share + tip.q_share == doctest::Approx(0.6).epsilon(1e-12));
}
