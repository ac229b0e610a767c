#include "cforge/values.hpp"

#include <string>

#include "cforge/error.hpp"

namespace cforge {
namespace {

// |S|!(n-|S|-1)!/n! for |S| = 0..n-1, built by exact incremental products.
std::vector<Rational> shapley_weights(std::size_t n) {
  std::vector<Rational> w(n);
  w[0] = Rational(1, static_cast<unsigned long>(n));
  w[0].canonicalize();
  for (std::size_t s = 0; s + 1 < n; ++s) {
    w[s + 1] = w[s] * Rational(static_cast<unsigned long>(s + 1),
                               static_cast<unsigned long>(n - s - 1));
    w[s + 1].canonicalize();
  }
  return w;
}

}  // namespace

void require_partition_of(const WorthFunction& v, const Partition& partition) {
  if (partition.ground() != v.players()) {
    throw StructuralError("partition does not cover exactly the players of the game");
  }
}

PayoffVector shapley_on(const WorthFunction& v, PlayerSet coalition, const ShapleyOptions& options) {
  if (!coalition.is_subset_of(v.players())) throw StructuralError("coalition outside the universe");
  const std::size_t n = coalition.size();
  if (n > options.max_players) {
    throw CapacityError("exact Shapley value requested for " + std::to_string(n) + " players",
                        options.max_players);
  }
  PayoffVector phi(v.player_count());
  if (n == 0) return phi;

  const std::vector<std::size_t> members = coalition.members();
  const std::vector<Rational> weight = shapley_weights(n);
  // marginal[k][s]: sum of v(S + i_k) - v(S) over S of size s not containing i_k.
  std::vector<std::vector<Rational>> marginal(n, std::vector<Rational>(n, Rational(0)));
  Rational diff;
  for_each_subset(coalition, [&](PlayerSet subset) {
    const std::size_t s = subset.size();
    if (s == n) return;
    for (std::size_t k = 0; k < n; ++k) {
      if (subset.contains(members[k])) continue;
      diff = v(subset.with(members[k]));
      diff -= v(subset);
      marginal[k][s] += diff;
    }
  });
  for (std::size_t k = 0; k < n; ++k) {
    Rational total(0);
    for (std::size_t s = 0; s < n; ++s) total += weight[s] * marginal[k][s];
    phi[members[k]] = total;
  }
  return phi;
}

PayoffVector shapley(const WorthFunction& v, const ShapleyOptions& options) {
  return shapley_on(v, v.players(), options);
}

PayoffVector ad_value(const WorthFunction& v, const Partition& partition,
                      const ShapleyOptions& options) {
  require_partition_of(v, partition);
  PayoffVector phi(v.player_count());
  for (PlayerSet block : partition.blocks()) {
    const PayoffVector part = shapley_on(v, block, options);
    for (std::size_t i : block.members()) phi[i] = part[i];
  }
  return phi;
}

PayoffVector chi_from_shapley(const WorthFunction& v, const Partition& partition,
                              const WeightVector& weights, const PayoffVector& shapley_payoff) {
  require_partition_of(v, partition);
  if (weights.size() != v.player_count()) throw StructuralError("weight vector has the wrong size");
  if (shapley_payoff.size() != v.player_count()) throw StructuralError("payoff vector has the wrong size");
  PayoffVector chi = shapley_payoff;
  for (PlayerSet block : partition.blocks()) {
    const Rational surplus = v(block) - shapley_payoff.sum(block);
    const Rational total_weight = weights.sum(block);
    for (std::size_t i : block.members()) chi[i] += weights[i] / total_weight * surplus;
  }
  return chi;
}

PayoffVector chi_value(const WorthFunction& v, const Partition& partition,
                       const WeightVector& weights, const ShapleyOptions& options) {
  require_partition_of(v, partition);
  return chi_from_shapley(v, partition, weights, shapley(v, options));
}

std::string_view to_string(ValueKind kind) { return kind == ValueKind::ad ? "ad" : "chi"; }

ValueKind parse_value_kind(std::string_view text) {
  if (text == "ad" || text == "a-d" || text == "AD" || text == "A-D") return ValueKind::ad;
  if (text == "chi" || text == "CHI") return ValueKind::chi;
  throw InputError("unknown value kind '" + std::string(text) + "' (expected ad or chi)");
}

ValueFunction ad_value_function(ShapleyOptions options) {
  return [options](const WorthFunction& v, const Partition& p) { return ad_value(v, p, options); };
}

ValueFunction chi_value_function(WeightVector weights, ShapleyOptions options) {
  return [weights = std::move(weights), options](const WorthFunction& v, const Partition& p) {
    return chi_value(v, p, weights, options);
  };
}

ValueFunction value_function(ValueKind kind, const WeightVector& weights, ShapleyOptions options) {
  return kind == ValueKind::ad ? ad_value_function(options) : chi_value_function(weights, options);
}

}  // namespace cforge
