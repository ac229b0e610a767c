#pragma once

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cforge/curve.hpp"
#include "cforge/fluid.hpp"
#include "cforge/game.hpp"
#include "cforge/peer_worth.hpp"

namespace fixture {

using namespace cforge;

inline Universe two_by_two() {
  return Universe({{"p1", Role::provider}, {"p2", Role::provider}, {"n1", Role::peer}, {"n2", Role::peer}});
}

// Two providers, two heterogeneous peers, given by single-provider worths.
inline PeerGameSpec example3_spec() {
  const Universe u = two_by_two();
  std::map<PlayerSet, Rational> hat;
  hat[u.parse_set("p1 n1")] = 5;
  hat[u.parse_set("p1 n2")] = 4;
  hat[u.parse_set("p1 n1 n2")] = 1;
  hat[u.parse_set("p2 n1")] = 4;
  hat[u.parse_set("p2 n2")] = 1;
  hat[u.parse_set("p2 n1 n2")] = 9;
  return PeerGameSpec::from_hat_table(u, hat);
}

inline WorthFunction example3() { return example3_spec().build_worth_function(); }

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline PayoffVector payoff(std::initializer_list<Rational> values) {
  return PayoffVector(std::vector<Rational>(values));
}

inline Curve curve(std::string name, std::function<double(double)> f) {
  return Curve(std::move(name), std::move(f));
}

// Convex decreasing 7(1-x)^1.5/8 + 1/8 against linear 1 - x.
inline FluidGame example1(QuadratureConfig cfg = {}) {
  return FluidGame({{"p", curve("p", [](double x) { return 7.0 * std::pow(1.0 - x, 1.5) / 8.0 + 0.125; })},
                    {"q", curve("q", [](double x) { return 1.0 - x; })}},
                   cfg);
}

// Concave 1 - x^1.5 against linear 1 - 2x/3.
inline FluidGame example2(QuadratureConfig cfg = {}) {
  return FluidGame({{"p", curve("p", [](double x) { return 1.0 - std::pow(x, 1.5); })},
                    {"q", curve("q", [](double x) { return 1.0 - 2.0 * x / 3.0; })}},
                   cfg);
}

// Random rational worth table on n players; worths in {-3, ..., 12} / {1,2,3}.
inline WorthFunction random_game(std::size_t n, std::mt19937_64& rng) {
  WorthFunction v(Universe::anonymous(n));
  std::uniform_int_distribution<long> num(-3, 12), den(1, 3);
  for (PlayerSet::Mask m = 1; m < (PlayerSet::Mask{1} << n); ++m) v.set(PlayerSet(m), q(num(rng), den(rng)));
  return v;
}

// Random game in which players 0 and 1 are symmetric and the last player is
// null (needs n >= 3).
inline WorthFunction random_structured_game(std::size_t n, std::mt19937_64& rng) {
  const WorthFunction base = random_game(n, rng);
  WorthFunction v(Universe::anonymous(n));
  const std::size_t null = n - 1;
  for (PlayerSet::Mask m = 1; m < (PlayerSet::Mask{1} << n); ++m) {
    const PlayerSet k = PlayerSet(m).without(null);
    PlayerSet swapped = k.without(0).without(1);
    if (k.contains(0)) swapped = swapped.with(1);
    if (k.contains(1)) swapped = swapped.with(0);
    v.set(PlayerSet(m), (base(k) + base(swapped)) / 2);
  }
  return v;
}

// Random superadditive game: sum over blocks of the best partition of a
// random nonnegative table.
inline WorthFunction random_superadditive_game(std::size_t n, std::mt19937_64& rng) {
  const WorthFunction base = random_game(n, rng);
  WorthFunction v(Universe::anonymous(n));
  for (PlayerSet::Mask m = 1; m < (PlayerSet::Mask{1} << n); ++m) {
    Rational best = base(PlayerSet(m)) < 0 ? Rational(0) : base(PlayerSet(m));
    for (PlayerSet::Mask s = (m - 1) & m; s != 0; s = (s - 1) & m) {
      const Rational split = v(PlayerSet(s)) + v(PlayerSet(m & ~s));
      if (split > best) best = split;
    }
    v.set(PlayerSet(m), best);
  }
  return v;
}

inline std::vector<Rational> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 9), den(1, 4);
  std::vector<Rational> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(q(num(rng), den(rng)));
  return w;
}

// Strictly decreasing, smooth cost: c + a (1 - x)^b (convex) or
// c + a (1 - x^b) (concave for b > 1).
inline Curve random_decreasing_curve(std::mt19937_64& rng, bool allow_concave = true) {
  std::uniform_real_distribution<double> a_dist(0.3, 1.5), b_dist(1.2, 3.0), c_dist(0.0, 0.5);
  std::bernoulli_distribution concave(allow_concave ? 0.5 : 0.0);
  const double a = a_dist(rng), b = b_dist(rng), c = c_dist(rng);
  if (concave(rng)) return curve("concave", [a, b, c](double x) { return c + a * (1.0 - std::pow(x, b)); });
  return curve("convex", [a, b, c](double x) { return c + a * std::pow(1.0 - x, b); });
}

inline Curve random_concave_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a_dist(0.3, 1.5), b_dist(1.2, 3.0), c_dist(0.0, 0.5);
  const double a = a_dist(rng), b = b_dist(rng), c = c_dist(rng);
  return curve("concave", [a, b, c](double x) { return c + a * (1.0 - std::pow(x, b)); });
}

}  // namespace fixture
