#include <cmath>
#include <random>
#include <set>

#include "cforge/error.hpp"
#include "cforge/peer_worth.hpp"
#include "doctest.h"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace cforge;
using fixture::q;

namespace {

PeerGameSpec three_providers(std::size_t eta) {
  return PeerGameSpec::from_costs({{"a", CostCurve::parse("1 - x^1.5")},
                                   {"b", CostCurve::parse("2 - 3*x/2")},
                                   {"c", CostCurve::parse("3/2*exp(-2*x)")}},
                                  eta);
}

WorthFunction power_game(std::size_t n, double exponent) {
  WorthFunction v(Universe::anonymous(n));
  for (PlayerSet::Mask m = 1; m < (PlayerSet::Mask{1} << n); ++m) {
    const double s = static_cast<double>(PlayerSet(m).size());
    v.set(PlayerSet(m), rational_from_double_rounded(std::pow(s, exponent), 12));
  }
  return v;
}

}  // namespace

TEST_CASE("single-provider worths from a table") {
  const PeerGameSpec spec = fixture::example3_spec();
  const Universe& u = spec.universe();
  CHECK(spec.hat_worth(u.parse_set("p1 n1")) == 5);
  CHECK(spec.hat_worth(u.parse_set("p2 n1 n2")) == 9);
  CHECK(spec.hat_worth(u.parse_set("p1")) == 0);
  CHECK(spec.hat_worth(u.parse_set("n1 n2")) == 0);
  CHECK_THROWS_AS(spec.hat_worth(u.parse_set("p1 p2")), InputError);
  CHECK_THROWS_AS(PeerGameSpec::from_hat_table(u, {{u.parse_set("p1 p2 n1"), q(3)}}), InputError);
}

TEST_CASE("coalescent worth of the two-provider example") {
  const PeerGameSpec spec = fixture::example3_spec();
  const Universe& u = spec.universe();
  const Allocation best = spec.best_allocation(u.all());
  CHECK(best.worth == 9);
  const std::set<PlayerSet> blocks(best.blocks.begin(), best.blocks.end());
  CHECK(blocks == std::set<PlayerSet>{u.parse_set("p1"), u.parse_set("p2 n1 n2")});
  CHECK(spec.coalescent_worth(u.parse_set("p1 p2 n1")) == 5);
  CHECK(spec.coalescent_worth(u.parse_set("p1 p2 n1 n2")) == 9);
  CHECK(spec.best_allocation(u.parse_set("n1 n2")).blocks.empty());

  // With one provider the worth is the table entry itself, even when a
  // smaller split would pay more.
  const WorthFunction v = spec.build_worth_function();
  CHECK(v(u.parse_set("p1 n1 n2")) == 1);
  for (PlayerSet::Mask m = 1; m < 16; ++m) {
    const PlayerSet s(m);
    if ((s & spec.providers()).size() <= 1) {
      CHECK(v(s) == spec.hat_worth(s));
    } else {
      CHECK(v(s) == oracle::best_admissible_sum(spec, s));
    }
  }
}

TEST_CASE("cost-curve worths agree with partition enumeration") {
  const PeerGameSpec spec = three_providers(4);
  CHECK(spec.homogeneous());
  CHECK(spec.eta() == 4);
  const WorthFunction v = spec.build_worth_function();
  for (PlayerSet::Mask m = 1; m < (PlayerSet::Mask{1} << 7); ++m) {
    const PlayerSet s(m);
    CAPTURE(spec.universe().format(s));
    CHECK(v(s) == oracle::best_admissible_sum(spec, s));
    const Allocation a = spec.best_allocation(s);
    Rational total(0);
    for (PlayerSet b : a.blocks) total += spec.hat_worth(b);
    CHECK(total == a.worth);
  }
  CHECK(is_superadditive(v).superadditive);
  CHECK(oracle::superadditive_scan(v));

  const std::vector<AllocationRow> rows = spec.allocation_table();
  CHECK(rows.size() == 7 * 5);
  for (const AllocationRow& row : rows) {
    std::size_t sum = 0;
    for (std::size_t c : row.counts) sum += c;
    CHECK(sum == row.peers);
    CHECK(row.counts.size() == row.providers.size());
  }
}

TEST_CASE("hat worth follows the cost curve") {
  const PeerGameSpec spec = PeerGameSpec::from_costs({{"p", CostCurve::parse("1 - 2*x/3")}}, 3);
  const Universe& u = spec.universe();
  CHECK(spec.hat_worth(u.parse_set("p")) == 0);
  CHECK(spec.hat_worth(u.parse_set("p n1")) == q(2, 9));
  CHECK(spec.hat_worth(u.parse_set("p n2 n3")) == q(4, 9));
  CHECK(spec.hat_worth(u.all()) == q(2, 3));
}

TEST_CASE("constant costs give a zero game") {
  const PeerGameSpec spec = PeerGameSpec::from_costs(
      {{"a", CostCurve::parse("3")}, {"b", CostCurve::parse("1/2")}}, 3);
  const WorthFunction v = spec.build_worth_function();
  for (const Rational& w : v.values()) CHECK(w == 0);
}

TEST_CASE("peers are anonymous and useful") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    std::vector<std::pair<std::string, CostCurve>> costs;
    const char* shapes[] = {"2 - x^2", "1 + exp(-x)", "3*(1-x)^2 + 1"};
    for (int i = 0; i < 2; ++i) costs.emplace_back("p" + std::to_string(i), CostCurve::parse(shapes[(t + i) % 3]));
    const PeerGameSpec spec = PeerGameSpec::from_costs(costs, 3);
    const WorthFunction v = spec.build_worth_function();
    const std::size_t n1 = 2;
    const std::size_t n2 = 3;
    for_each_subset(v.players() - PlayerSet::singleton(n1) - PlayerSet::singleton(n2), [&](PlayerSet s) {
      CHECK(v(s.with(n1)) == v(s.with(n2)));
      CHECK(v(s.with(n1)) >= v(s));
    });
  }
}

TEST_CASE("superadditivity check") {
  CHECK(is_superadditive(power_game(4, 2.0)).superadditive);
  const SuperadditivityResult root = is_superadditive(power_game(4, 0.5));
  CHECK_FALSE(root.superadditive);
  REQUIRE(root.witness.has_value());
  const auto [s, t] = *root.witness;
  CHECK_FALSE(s.intersects(t));
  const WorthFunction v = power_game(4, 0.5);
  CHECK(v(s | t) < v(s) + v(t));
  CHECK(is_superadditive(power_game(4, 1.0)).superadditive);
}

TEST_CASE("monotonicity warnings") {
  const PeerGameSpec spec = PeerGameSpec::from_costs(
      {{"up", CostCurve::parse("x")}, {"down", CostCurve::parse("1 - x")}}, 4);
  const std::vector<std::string> warnings = spec.monotonicity_warnings();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("up") != std::string::npos);
}
