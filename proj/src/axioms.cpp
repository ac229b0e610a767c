#include "cforge/axioms.hpp"

#include "cforge/error.hpp"

namespace cforge {

bool is_null_player(const WorthFunction& v, std::size_t player) {
  return is_null_player(v, player, v.players());
}

bool is_null_player(const WorthFunction& v, std::size_t player, PlayerSet within) {
  bool null = true;
  for_each_subset(within.without(player), [&](PlayerSet k) {
    if (null && v(k.with(player)) != v(k)) null = false;
  });
  return null;
}

bool are_symmetric(const WorthFunction& v, std::size_t i, std::size_t j) {
  if (i == j) return true;
  bool symmetric = true;
  for_each_subset(v.players().without(i).without(j), [&](PlayerSet k) {
    if (symmetric && v(k.with(i)) != v(k.with(j))) symmetric = false;
  });
  return symmetric;
}

namespace {

bool null_players_get_zero(const WorthFunction& v, const Partition& partition,
                           const PayoffVector& phi) {
  for (std::size_t i = 0; i < v.player_count(); ++i) {
    if (phi[i] != 0 && is_null_player(v, i, partition.block_of(i))) return false;
  }
  return true;
}

}  // namespace

AxiomReport check_axioms(const WorthFunction& v, const Partition& partition,
                         const PayoffVector& phi) {
  require_partition_of(v, partition);
  if (phi.size() != v.player_count()) throw StructuralError("payoff vector has the wrong size");
  AxiomReport report;

  report.coalition_efficiency = true;
  for (PlayerSet block : partition.blocks()) {
    if (phi.sum(block) != v(block)) report.coalition_efficiency = false;
  }

  report.coalition_symmetry = true;
  for (PlayerSet block : partition.blocks()) {
    const auto members = block.members();
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (phi[members[a]] != phi[members[b]] && are_symmetric(v, members[a], members[b])) {
          report.coalition_symmetry = false;
        }
      }
    }
  }

  report.null_player = null_players_get_zero(v, partition, phi);
  if (partition.is_grand()) report.grand_null_player = report.null_player;
  return report;
}

AxiomReport check_axioms(const WorthFunction& v, const Partition& partition,
                         const ValueFunction& value) {
  AxiomReport report = check_axioms(v, partition, value(v, partition));
  const Partition grand = Partition::grand(v.players());
  report.grand_null_player = null_players_get_zero(v, grand, value(v, grand));
  return report;
}

bool check_additivity(const WorthFunction& v, const WorthFunction& w, const Partition& partition,
                      const ValueFunction& value) {
  const PayoffVector lhs = value(v + w, partition);
  const PayoffVector a = value(v, partition);
  const PayoffVector b = value(w, partition);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != a[i] + b[i]) return false;
  }
  return true;
}

bool check_weighted_splitting(const WorthFunction& v, const Partition& coarse,
                              const Partition& finer, const WeightVector& weights,
                              const ValueFunction& value) {
  if (!finer.refines(coarse)) throw StructuralError("WSP needs a refinement of the partition");
  if (weights.size() != v.player_count()) throw StructuralError("weight vector has the wrong size");
  const PayoffVector before = value(v, coarse);
  const PayoffVector after = value(v, finer);
  for (PlayerSet block : finer.blocks()) {
    const auto members = block.members();
    const Rational ref = (before[members[0]] - after[members[0]]) / weights[members[0]];
    for (std::size_t i : members) {
      if ((before[i] - after[i]) / weights[i] != ref) return false;
    }
  }
  return true;
}

}  // namespace cforge
