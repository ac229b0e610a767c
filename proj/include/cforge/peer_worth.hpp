#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cforge/expr.hpp"
#include "cforge/game.hpp"

namespace cforge {

/// One way of splitting a coalition's peers among its providers: one block
/// per provider, holding the provider and the peers it serves.
struct Allocation {
  Rational worth;
  std::vector<PlayerSet> blocks;
};

/// Row of the allocation table of the cost-curve mode: the optimal split of
/// `peers` homogeneous peers among a set of providers.
struct AllocationRow {
  PlayerSet providers;  // over provider indices
  std::size_t peers = 0;
  std::vector<std::size_t> counts;  // one per provider, in index order
  Rational worth;
};

/// A peer-assisted service game. Players are the providers followed by the
/// peers. The worth of a coalition with a single provider p comes either
/// from p's cost curve, Omega_p(0) - Omega_p(k / eta) with k assisting peers,
/// or from an explicit table; coalitions with several providers take the best
/// split of their peers among them.
class PeerGameSpec {
 public:
  /// Homogeneous peers named n1..n_eta. Each curve is the total cost of its
  /// provider as a function of the assisting fraction.
  static PeerGameSpec from_costs(std::vector<std::pair<std::string, CostCurve>> providers,
                                 std::size_t eta);

  /// Explicit single-provider worths. Every key must contain exactly one
  /// provider; unlisted single-provider coalitions are worth 0.
  static PeerGameSpec from_hat_table(Universe universe, std::map<PlayerSet, Rational> hat);

  const Universe& universe() const { return universe_; }
  PlayerSet providers() const { return universe_.providers(); }
  PlayerSet peers() const { return universe_.peers(); }
  bool homogeneous() const { return !curves_.empty(); }
  std::size_t eta() const { return universe_.peers().size(); }

  /// Single-provider worth. 0 without a provider; InputError with two or more.
  Rational hat_worth(PlayerSet coalition) const;

  /// Best admissible split of the coalition; worth 0 and no blocks when it
  /// has no provider.
  Allocation best_allocation(PlayerSet coalition) const;

  Rational coalescent_worth(PlayerSet coalition) const {
    return best_allocation(coalition).worth;
  }

  /// Tabulates the coalescent worth of every coalition.
  WorthFunction build_worth_function(std::size_t max_players = 20) const;

  /// Cost-curve mode only: optimal splits for every provider subset and peer
  /// count, ties broken towards the lexicographically smallest count vector.
  std::vector<AllocationRow> allocation_table() const;

  /// Providers whose cost curve increases somewhere on the grid k / eta.
  std::vector<std::string> monotonicity_warnings() const;

  const std::vector<std::pair<std::string, CostCurve>>& curves() const { return curves_; }
  const std::map<PlayerSet, Rational>& hat_table() const { return hat_; }

 private:
  std::vector<std::size_t> split_counts(const std::vector<std::size_t>& providers,
                                        std::size_t peers, Rational& worth) const;
  Allocation explicit_allocation(PlayerSet coalition) const;

  Universe universe_;
  std::vector<std::pair<std::string, CostCurve>> curves_;
  // Cost-curve mode: hat_by_count_[p][k] = Omega_p(0) - Omega_p(k / eta).
  std::vector<std::vector<Rational>> hat_by_count_;
  std::map<PlayerSet, Rational> hat_;
};

struct SuperadditivityResult {
  bool superadditive = true;
  /// Disjoint S, T with v(S u T) < v(S) + v(T).
  std::optional<std::pair<PlayerSet, PlayerSet>> witness;
};

SuperadditivityResult is_superadditive(const WorthFunction& v);

}  // namespace cforge
