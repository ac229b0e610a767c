#pragma once

#include <optional>

#include "cforge/game.hpp"
#include "cforge/values.hpp"

namespace cforge {

struct AxiomReport {
  bool coalition_efficiency = false;  // CE
  bool coalition_symmetry = false;    // CS
  /// A player adding nothing to any coalition inside its own block gets 0.
  bool null_player = false;           // NP
  /// GNP concerns the payoff at the grand coalition; unknown when only a
  /// payoff vector for a finer partition is available.
  std::optional<bool> grand_null_player;
};

/// v(K + i) = v(K) for every K inside `within` (default: all players).
bool is_null_player(const WorthFunction& v, std::size_t player);
bool is_null_player(const WorthFunction& v, std::size_t player, PlayerSet within);

/// v(K + i) = v(K + j) for every K not containing i or j.
bool are_symmetric(const WorthFunction& v, std::size_t i, std::size_t j);

AxiomReport check_axioms(const WorthFunction& v, const Partition& partition,
                         const PayoffVector& phi);

/// Evaluates the value on `partition` and on the grand coalition so that GNP
/// is decided as well.
AxiomReport check_axioms(const WorthFunction& v, const Partition& partition,
                         const ValueFunction& value);

/// ADD: value(v + w) == value(v) + value(w) on the same partition.
bool check_additivity(const WorthFunction& v, const WorthFunction& w,
                      const Partition& partition, const ValueFunction& value);

/// WSP: for j in the block of i in `finer`,
/// (phi_i(P) - phi_i(P')) / w_i == (phi_j(P) - phi_j(P')) / w_j.
/// Throws StructuralError unless `finer` refines `coarse`.
bool check_weighted_splitting(const WorthFunction& v, const Partition& coarse,
                              const Partition& finer, const WeightVector& weights,
                              const ValueFunction& value);

}  // namespace cforge
