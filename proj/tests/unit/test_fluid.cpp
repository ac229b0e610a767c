#include <cmath>
#include <random>

#include "cforge/error.hpp"
#include "cforge/fluid.hpp"
#include "doctest.h"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace cforge;

namespace {

const PlayerSet kP = PlayerSet::singleton(0);
const PlayerSet kQ = PlayerSet::singleton(1);
const PlayerSet kPQ = PlayerSet::first(2);

double efficiency_gap(const FluidGame& g, PlayerSet zbar, double x, const FluidPayoffs& f) {
  double lhs = x * f.peer;
  double rhs = -g.m_omega(zbar, x);
  for (std::size_t p : zbar.members()) {
    lhs += f.provider.at(p);
    rhs += g.cost(p)(0.0);
  }
  return std::abs(lhs - rhs);
}

FluidGame pair_of(Curve a, Curve b) { return FluidGame({{"p", std::move(a)}, {"q", std::move(b)}}); }

}  // namespace

TEST_CASE("least total cost") {
  const FluidGame g = fixture::example2();
  for (int k = 0; k <= 20; ++k) {
    const double x = k / 20.0;
    CAPTURE(x);
    CHECK(g.m_omega(kP, x) == doctest::Approx(1 - std::pow(x, 1.5)).epsilon(1e-12));
    CHECK(g.m_omega(kPQ, x) == doctest::Approx(2 - std::max(std::pow(x, 1.5), 2 * x / 3)).epsilon(1e-9));
    CHECK(g.m_omega(PlayerSet(), x) == 0.0);
  }
  CHECK(g.m_omega(kPQ, 0.0) == 2.0);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const Curve a = fixture::random_decreasing_curve(rng);
    const Curve b = fixture::random_decreasing_curve(rng);
    const Curve c = fixture::random_decreasing_curve(rng);
    const FluidGame three({{"a", a}, {"b", b}, {"c", c}});
    double previous = three.m_omega(three.all(), 0.0);
    CHECK(previous == doctest::Approx(a(0) + b(0) + c(0)).epsilon(1e-12));
    for (int k = 1; k <= 10; ++k) {
      const double x = k / 10.0;
      CAPTURE(x);
      const double pair = three.m_omega(PlayerSet::first(2), x);
      CHECK(pair == doctest::Approx(oracle::grid_m({a, b}, x)).epsilon(1e-6));
      const double all = three.m_omega(three.all(), x);
      CHECK(all <= previous + 1e-12);
      CHECK(all <= pair + c(0) + 1e-12);
      previous = all;
    }
  }
  CHECK_THROWS(FluidGame({{"a", fixture::curve("a", [](double x) { return 1 - x; })},
                          {"b", fixture::curve("b", [](double x) { return 1 - x; })},
                          {"c", fixture::curve("c", [](double x) { return 1 - x; })},
                          {"d", fixture::curve("d", [](double x) { return 1 - x; })}})
                   .m_omega(PlayerSet::first(4), 0.5));
}

TEST_CASE("closed forms of the concave example") {
  const FluidGame g = fixture::example2();
  for (int k = 0; k <= 10; ++k) {
    const double x = k / 10.0;
    CAPTURE(x);
    const FluidPayoffs p = fluid_ad(g, kP, x);
    CHECK(std::abs(p.provider.at(0) - 2 * std::pow(x, 1.5) / 5) < 1e-6);
    CHECK(std::abs(p.peer - 3 * std::sqrt(x) / 5) < 1e-6);
    const FluidPayoffs q = fluid_ad(g, kQ, x);
    CHECK(std::abs(q.provider.at(1) - x / 3) < 1e-6);
    CHECK(std::abs(q.peer - 1.0 / 3) < 1e-6);
  }
  CHECK(std::abs(fluid_ad(fixture::example1(), kP, 0.0).peer - 21.0 / 32) < 1e-6);
  CHECK(fluid_ad(g, PlayerSet(), 0.5).peer == 0.0);
}

TEST_CASE("specializations agree with the general formula") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 6; ++t) {
    const FluidGame g = pair_of(fixture::random_decreasing_curve(rng), fixture::random_decreasing_curve(rng));
    for (double x : {0.0, 0.3, 0.75, 1.0}) {
      CAPTURE(x);
      const FluidPayoffs general = fluid_ad(g, kP, x);
      const FluidPayoffs single = fluid_ad_single(g, 0, x);
      CHECK(std::abs(general.peer - single.peer) < 1e-6);
      CHECK(std::abs(general.provider.at(0) - single.provider.at(0)) < 1e-6);
      const FluidPayoffs both = fluid_ad(g, kPQ, x);
      const FluidPayoffs dual = fluid_ad_dual(g, 0, 1, x);
      CHECK(std::abs(both.peer - dual.peer) < 1e-6);
      CHECK(std::abs(both.provider.at(0) - dual.provider.at(0)) < 1e-6);
      CHECK(std::abs(both.provider.at(1) - dual.provider.at(1)) < 1e-6);
      CHECK(efficiency_gap(g, kPQ, x, both) < 1e-8);
    }
  }
}

TEST_CASE("chi payoffs") {
  const FluidGame g = fixture::example2();
  const FluidPayoffs grand = fluid_shapley(g);
  const FluidPayoffs at_one = fluid_chi(g, kPQ, 1.0, {2.0, 0.5}, grand);
  CHECK(std::abs(at_one.peer - grand.peer) < 1e-9);
  CHECK(std::abs(at_one.provider.at(0) - grand.provider.at(0)) < 1e-9);
  CHECK(std::abs(at_one.provider.at(1) - grand.provider.at(1)) < 1e-9);

  for (int k = 1; k <= 20; ++k) {
    const double x = k / 20.0;
    CAPTURE(x);
    const FluidPayoffs chi = fluid_chi(g, kQ, x, {1.0, 1.0}, grand);
    CHECK(efficiency_gap(g, kQ, x, chi) < 1e-8);
    const double dn = chi.peer - grand.peer;
    const double dq = chi.provider.at(1) - grand.provider.at(1);
    CHECK(dn * dq >= 0.0);
    CHECK(std::abs(dn - fluid_surplus(g, kQ, x, grand) / (x + 1.0)) < 1e-9);
  }

  const FluidGame e1 = fixture::example1();
  const FluidPayoffs e1_grand = fluid_shapley(e1);
  CHECK(fluid_surplus(e1, kQ, 0.5, e1_grand) < 0.0);
  CHECK(fluid_surplus(e1, kQ, 0.6, e1_grand) > 0.0);
  CHECK_THROWS_AS(fluid_chi(g, kQ, 0.5, {1.0}), InputError);
  CHECK_THROWS_AS(fluid_chi(g, kQ, 0.5, {1.0, 0.0}), InputError);
}

TEST_CASE("noncontributing providers and core violations") {
  const FluidGame g = fixture::example2();
  CHECK(noncontributing_providers(g) == kQ);
  CHECK(core_violation_margin(g, 1) > 0.0);

  const FluidGame single({{"p", fixture::curve("1-x", [](double x) { return 1 - x; })}});
  CHECK(noncontributing_providers(single).empty());
  CHECK_THROWS_AS(core_violation_margin(single, 0), InputError);

  std::mt19937_64 rng(10);
  for (int t = 0; t < 5; ++t) {
    const FluidGame concave = pair_of(fixture::random_concave_curve(rng), fixture::random_concave_curve(rng));
    const PlayerSet none = noncontributing_providers(concave);
    CHECK(none.size() >= 1);
    for (std::size_t p : none.members()) CHECK(core_violation_margin(concave, p) > 0.0);
  }
}

TEST_CASE("a provider alone keeps more than in company") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 6; ++t) {
    // Convex costs only: with a concave partner the peer comparison can turn.
    const FluidGame g = pair_of(fixture::random_decreasing_curve(rng, false),
                                fixture::random_decreasing_curve(rng, false));
    for (int k = 1; k <= 5; ++k) {
      const double x = k / 5.0;
      CAPTURE(x);
      const FluidPayoffs alone = fluid_ad(g, kP, x);
      const FluidPayoffs both = fluid_ad(g, kPQ, x);
      CHECK(alone.provider.at(0) > both.provider.at(0));
      CHECK(alone.peer < both.peer);
    }
  }
}

TEST_CASE("peer split between two providers") {
  const Curve convex = fixture::curve("(1-x)^2", [](double x) { return (1 - x) * (1 - x) + 0.5; });
  const SplitEquilibrium sym = peer_split_equilibrium(pair_of(convex, convex), 0, 1);
  CHECK(sym.outcome == SplitOutcome::interior);
  CHECK(sym.share == doctest::Approx(0.5).epsilon(1e-6));

  // With concave costs the even split repels: each side pays its peers more
  // the larger it grows.
  const Curve concave = fixture::curve("1-x^2", [](double x) { return 1 - x * x; });
  const SplitEquilibrium tip = peer_split_equilibrium(pair_of(concave, concave), 0, 1);
  CHECK(tip.outcome != SplitOutcome::interior);
  REQUIRE(tip.unstable_roots.size() == 1);
  CHECK(tip.unstable_roots[0] == doctest::Approx(0.5).epsilon(1e-6));

  const SplitEquilibrium e1 = peer_split_equilibrium(fixture::example1(), 0, 1);
  CHECK(e1.outcome == SplitOutcome::interior);
  CHECK(std::abs(e1.share - 0.6163) < 1e-3);

  const FluidGame e2 = fixture::example2();
  const SplitEquilibrium mono = peer_split_equilibrium(e2, 0, 1);
  CHECK(mono.outcome == SplitOutcome::monopoly_first);
  CHECK(mono.share == 1.0);
  const std::vector<double> cross = payoff_crossings([&](double x) { return fluid_ad(e2, kP, x).peer; },
                                                     [&](double x) { return fluid_ad(e2, kQ, x).peer; });
  REQUIRE(cross.size() == 1);
  CHECK(std::abs(cross[0] - 25.0 / 81) < 1e-4);

  const SplitEquilibrium none = peer_split_equilibrium([](double) { return 1.0; }, [](double) { return 1.0; });
  CHECK(none.outcome == SplitOutcome::indifferent);
}

TEST_CASE("fairness identity") {
  const FluidGame g = fixture::example2();
  CHECK(std::abs(fair_identity_residual(g, kPQ, 0, 0.5)) < 1e-4);
  CHECK(std::abs(fair_identity_residual(g, kPQ, 1, 0.5)) < 1e-4);
  for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    CAPTURE(x);
    CHECK(std::abs(fair_identity_residual(g, kP, 0, x)) < 1e-4);
    CHECK(std::abs(fair_identity_residual(g, kQ, 1, x)) < 1e-4);
  }
}

TEST_CASE("configuration checks") {
  QuadratureConfig bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  const FluidGame g = fixture::example2();
  CHECK(g.index_of("q") == 1);
  CHECK_THROWS_AS(g.index_of("r"), InputError);
  const FluidGame flat({{"flat", fixture::curve("2", [](double) { return 2.0; })}});
  CHECK_FALSE(flat.warnings().empty());
}
