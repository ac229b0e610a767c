#include "cforge/stability.hpp"

#include <algorithm>

#include "cforge/error.hpp"
#include "cforge/parallel.hpp"

namespace cforge {

std::vector<PlayerSet> core_violations(const WorthFunction& v, const PayoffVector& phi) {
  if (phi.size() != v.player_count()) throw StructuralError("payoff vector has the wrong size");
  std::vector<PlayerSet> out;
  for_each_subset(v.players(), [&](PlayerSet k) {
    if (!k.empty() && phi.sum(k) < v(k)) out.push_back(k);
  });
  return out;
}

bool in_core(const WorthFunction& v, const PayoffVector& phi) {
  return phi.sum(v.players()) == v(v.players()) && core_violations(v, phi).empty();
}

BlockPayoffTable::BlockPayoffTable(const WorthFunction& v, ValueKind kind,
                                   const WeightVector& weights, const ShapleyOptions& options)
    : kind_(kind), players_(v.player_count()), table_(std::size_t{1} << v.player_count()) {
  PayoffVector grand;
  if (kind == ValueKind::chi) {
    if (weights.size() != players_) throw StructuralError("weight vector has the wrong size");
    grand = shapley(v, options);
  }
  parallel_for(table_.size(), [&](std::size_t mask) {
    const PlayerSet block(mask);
    if (block.empty()) return;
    auto& row = table_[mask];
    const auto members = block.members();
    row.reserve(members.size());
    if (kind_ == ValueKind::ad) {
      const PayoffVector part = shapley_on(v, block, options);
      for (std::size_t i : members) row.push_back(part[i]);
    } else {
      const Rational surplus = v(block) - grand.sum(block);
      const Rational total_weight = weights.sum(block);
      for (std::size_t i : members) row.push_back(grand[i] + weights[i] / total_weight * surplus);
    }
  });
}

const Rational& BlockPayoffTable::payoff(PlayerSet block, std::size_t player) const {
  const auto& row = table_.at(block.mask());
  const PlayerSet::Mask below = block.mask() & ((PlayerSet::Mask{1} << player) - 1);
  return row.at(static_cast<std::size_t>(std::popcount(below)));
}

PayoffVector BlockPayoffTable::payoffs(const Partition& partition) const {
  if (partition.ground() != PlayerSet::first(players_)) {
    throw StructuralError("partition does not cover exactly the players of the game");
  }
  PayoffVector out(players_);
  for (PlayerSet block : partition.blocks()) {
    const auto& row = table_[block.mask()];
    std::size_t k = 0;
    for (std::size_t i : block.members()) out[i] = row[k++];
  }
  return out;
}

std::vector<PlayerSet> blocking_coalitions(const BlockPayoffTable& table,
                                           const Partition& partition) {
  const PayoffVector current = table.payoffs(partition);
  std::vector<PlayerSet> out;
  for_each_subset(partition.ground(), [&](PlayerSet c) {
    if (c.empty() || partition.has_block(c)) return;
    const auto members = c.members();
    const bool blocks = std::all_of(members.begin(), members.end(), [&](std::size_t i) {
      return table.payoff(c, i) > current[i];
    });
    if (blocks) out.push_back(c);
  });
  return out;
}

std::vector<PlayerSet> blocking_coalitions(const WorthFunction& v, const Partition& partition,
                                           ValueKind kind, const WeightVector& weights,
                                           const ShapleyOptions& options) {
  require_partition_of(v, partition);
  return blocking_coalitions(BlockPayoffTable(v, kind, weights, options), partition);
}

}  // namespace cforge
