#pragma once

#include <vector>

#include "cforge/game.hpp"
#include "cforge/values.hpp"

namespace cforge {

/// Every K with phi_K < v(K), in increasing mask order (empty set excluded).
std::vector<PlayerSet> core_violations(const WorthFunction& v, const PayoffVector& phi);

/// Efficient and no violated coalition.
bool in_core(const WorthFunction& v, const PayoffVector& phi);

/// Payoffs of the members of every coalition C in any coalition structure
/// that contains C as a block. Both A-D and chi are coalition independent,
/// so a single table serves every partition.
class BlockPayoffTable {
 public:
  BlockPayoffTable(const WorthFunction& v, ValueKind kind, const WeightVector& weights,
                   const ShapleyOptions& options = {});

  ValueKind kind() const { return kind_; }
  std::size_t player_count() const { return players_; }

  /// Payoff of player i when C(i) = block.
  const Rational& payoff(PlayerSet block, std::size_t player) const;

  /// Payoff vector of a whole coalition structure.
  PayoffVector payoffs(const Partition& partition) const;

 private:
  ValueKind kind_;
  std::size_t players_ = 0;
  // Indexed by block mask; entries follow the block's members in index order.
  std::vector<std::vector<Rational>> table_;
};

/// Coalitions C that block P: every member of C is strictly better off in a
/// structure containing C than in P. Blocks of P never block. Increasing
/// mask order.
std::vector<PlayerSet> blocking_coalitions(const BlockPayoffTable& table,
                                           const Partition& partition);

std::vector<PlayerSet> blocking_coalitions(const WorthFunction& v, const Partition& partition,
                                           ValueKind kind, const WeightVector& weights,
                                           const ShapleyOptions& options = {});

}  // namespace cforge
