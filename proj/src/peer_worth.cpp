#include "cforge/peer_worth.hpp"

#include "cforge/error.hpp"
#include "cforge/parallel.hpp"

namespace cforge {

PeerGameSpec PeerGameSpec::from_costs(std::vector<std::pair<std::string, CostCurve>> providers,
                                      std::size_t eta) {
  if (providers.empty()) throw InputError("a peer game needs at least one provider");
  if (eta == 0) throw InputError("the number of peers must be at least 1");
  std::vector<Player> players;
  for (const auto& [name, curve] : providers) players.push_back({name, Role::provider});
  for (std::size_t k = 1; k <= eta; ++k) players.push_back({"n" + std::to_string(k), Role::peer});
  if (players.size() > WorthFunction::kMaxPlayers) {
    throw CapacityError("peer game with " + std::to_string(players.size()) + " players",
                        WorthFunction::kMaxPlayers);
  }

  PeerGameSpec spec;
  spec.universe_ = Universe(std::move(players));
  spec.curves_ = std::move(providers);
  for (const auto& [name, curve] : spec.curves_) {
    std::vector<Rational> row(eta + 1);
    const Rational base = curve.exact(Rational(0));
    for (std::size_t k = 0; k <= eta; ++k) {
      Rational x(static_cast<unsigned long>(k), static_cast<unsigned long>(eta));
      x.canonicalize();
      row[k] = base - curve.exact(x);
    }
    spec.hat_by_count_.push_back(std::move(row));
  }
  return spec;
}

PeerGameSpec PeerGameSpec::from_hat_table(Universe universe, std::map<PlayerSet, Rational> hat) {
  if (universe.providers().empty()) throw InputError("a peer game needs at least one provider");
  if (universe.size() > WorthFunction::kMaxPlayers) {
    throw CapacityError("peer game with " + std::to_string(universe.size()) + " players",
                        WorthFunction::kMaxPlayers);
  }
  for (const auto& [set, value] : hat) {
    if (!set.is_subset_of(universe.all())) throw InputError("worth entry outside the universe");
    if ((set & universe.providers()).size() != 1) {
      throw InputError("single-provider worth given for {" + universe.format(set) +
                       "}, which does not contain exactly one provider");
    }
    if (set.size() == 1 && value != 0) {
      throw InputError("a provider alone must be worth 0, got " + to_string(value) + " for " +
                       universe.format(set));
    }
  }
  PeerGameSpec spec;
  spec.universe_ = std::move(universe);
  spec.hat_ = std::move(hat);
  return spec;
}

Rational PeerGameSpec::hat_worth(PlayerSet coalition) const {
  const PlayerSet z = coalition & providers();
  if (z.empty()) return Rational(0);
  if (z.size() > 1) {
    throw InputError("single-provider worth requested for {" + universe_.format(coalition) +
                     "}, which has " + std::to_string(z.size()) + " providers");
  }
  if (homogeneous()) return hat_by_count_[z.lowest()][(coalition & peers()).size()];
  auto it = hat_.find(coalition);
  return it == hat_.end() ? Rational(0) : it->second;
}

// Splits `peers` homogeneous peers among `providers` (indices into the curve
// list). suffix[j][k] is the best worth of providers j.. serving k peers;
// walking forward and taking the smallest optimal count yields the
// lexicographically smallest optimal vector.
std::vector<std::size_t> PeerGameSpec::split_counts(const std::vector<std::size_t>& providers,
                                                    std::size_t peers, Rational& worth) const {
  const std::size_t m = providers.size();
  std::vector<std::vector<Rational>> suffix(m + 1, std::vector<Rational>(peers + 1));
  std::vector<std::vector<bool>> reachable(m + 1, std::vector<bool>(peers + 1, false));
  reachable[m][0] = true;
  for (std::size_t j = m; j-- > 0;) {
    const auto& hat = hat_by_count_[providers[j]];
    for (std::size_t k = 0; k <= peers; ++k) {
      for (std::size_t t = 0; t <= k; ++t) {
        if (!reachable[j + 1][k - t]) continue;
        Rational candidate = hat[t] + suffix[j + 1][k - t];
        if (!reachable[j][k] || candidate > suffix[j][k]) {
          suffix[j][k] = std::move(candidate);
          reachable[j][k] = true;
        }
      }
    }
  }
  std::vector<std::size_t> counts(m);
  std::size_t left = peers;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& hat = hat_by_count_[providers[j]];
    for (std::size_t t = 0; t <= left; ++t) {
      if (reachable[j + 1][left - t] && hat[t] + suffix[j + 1][left - t] == suffix[j][left]) {
        counts[j] = t;
        left -= t;
        break;
      }
    }
  }
  worth = suffix[0][peers];
  return counts;
}

Allocation PeerGameSpec::explicit_allocation(PlayerSet coalition) const {
  const std::vector<std::size_t> zs = (coalition & providers()).members();
  const std::vector<std::size_t> hs = (coalition & peers()).members();
  const std::size_t h = hs.size();
  const std::size_t full = (std::size_t{1} << h) - 1;
  auto expand = [&](std::size_t local) {
    PlayerSet out;
    for (std::size_t b = 0; b < h; ++b) {
      if ((local >> b) & 1U) out = out.with(hs[b]);
    }
    return out;
  };

  // best[j][U]: best worth of the first j providers serving exactly the
  // local peer set U; choice[j][U] is the share of provider j-1.
  const std::size_t m = zs.size();
  std::vector<std::vector<Rational>> best(m + 1, std::vector<Rational>(full + 1));
  std::vector<std::vector<bool>> reachable(m + 1, std::vector<bool>(full + 1, false));
  std::vector<std::vector<std::size_t>> choice(m + 1, std::vector<std::size_t>(full + 1, 0));
  reachable[0][0] = true;
  std::vector<Rational> own(full + 1);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t local = 0; local <= full; ++local) {
      own[local] = hat_worth(expand(local).with(zs[j]));
    }
    for (std::size_t u = 0; u <= full; ++u) {
      std::size_t share = 0;
      while (true) {
        if (reachable[j][u & ~share]) {
          Rational candidate = best[j][u & ~share] + own[share];
          if (!reachable[j + 1][u] || candidate > best[j + 1][u]) {
            best[j + 1][u] = std::move(candidate);
            reachable[j + 1][u] = true;
            choice[j + 1][u] = share;
          }
        }
        if (share == u) break;
        share = (share - u) & u;
      }
    }
  }
  Allocation out;
  out.worth = best[m][full];
  out.blocks.resize(m);
  std::size_t u = full;
  for (std::size_t j = m; j > 0; --j) {
    const std::size_t share = choice[j][u];
    out.blocks[j - 1] = expand(share).with(zs[j - 1]);
    u &= ~share;
  }
  return out;
}

Allocation PeerGameSpec::best_allocation(PlayerSet coalition) const {
  if (!coalition.is_subset_of(universe_.all())) throw StructuralError("coalition outside the game");
  const PlayerSet z = coalition & providers();
  if (z.empty()) return {Rational(0), {}};
  if (!homogeneous()) return explicit_allocation(coalition);

  const std::vector<std::size_t> zs = z.members();
  const std::vector<std::size_t> hs = (coalition & peers()).members();
  Allocation out;
  const std::vector<std::size_t> counts = split_counts(zs, hs.size(), out.worth);
  std::size_t next = 0;
  for (std::size_t j = 0; j < zs.size(); ++j) {
    PlayerSet block = PlayerSet::singleton(zs[j]);
    for (std::size_t t = 0; t < counts[j]; ++t) block = block.with(hs[next++]);
    out.blocks.push_back(block);
  }
  return out;
}

WorthFunction PeerGameSpec::build_worth_function(std::size_t max_players) const {
  if (universe_.size() > max_players) {
    throw CapacityError("worth table for " + std::to_string(universe_.size()) + " players",
                        max_players);
  }
  std::vector<Rational> values(std::size_t{1} << universe_.size());
  if (homogeneous()) {
    // Peers are interchangeable, so only (provider set, peer count) matters.
    const std::size_t z = providers().size();
    const std::size_t eta = this->eta();
    std::vector<std::vector<Rational>> by_count(std::size_t{1} << z,
                                                std::vector<Rational>(eta + 1));
    parallel_for(by_count.size(), [&](std::size_t mask) {
      const std::vector<std::size_t> zs = PlayerSet(mask).members();
      if (zs.empty()) return;
      for (std::size_t k = 0; k <= eta; ++k) split_counts(zs, k, by_count[mask][k]);
    });
    const PlayerSet::Mask provider_mask = providers().mask();
    for (std::size_t mask = 0; mask < values.size(); ++mask) {
      const PlayerSet s(mask);
      values[mask] = by_count[s.mask() & provider_mask][(s & peers()).size()];
    }
  } else {
    parallel_for(values.size(), [&](std::size_t mask) {
      values[mask] = best_allocation(PlayerSet(mask)).worth;
    });
  }
  return WorthFunction(universe_, std::move(values));
}

std::vector<AllocationRow> PeerGameSpec::allocation_table() const {
  if (!homogeneous()) throw InputError("allocation tables need the cost-curve mode");
  std::vector<AllocationRow> rows;
  const std::size_t z = providers().size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << z); ++mask) {
    const std::vector<std::size_t> zs = PlayerSet(mask).members();
    for (std::size_t k = 0; k <= eta(); ++k) {
      AllocationRow row;
      row.providers = PlayerSet(mask);
      row.peers = k;
      row.counts = split_counts(zs, k, row.worth);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::string> PeerGameSpec::monotonicity_warnings() const {
  std::vector<std::string> out;
  for (std::size_t p = 0; p < hat_by_count_.size(); ++p) {
    const auto& row = hat_by_count_[p];
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (row[k] < row[k - 1]) {
        out.push_back("cost curve of " + curves_[p].first + " increases between " +
                      std::to_string(k - 1) + " and " + std::to_string(k) + " peers");
        break;
      }
    }
  }
  return out;
}

SuperadditivityResult is_superadditive(const WorthFunction& v) {
  SuperadditivityResult result;
  const std::size_t count = std::size_t{1} << v.player_count();
  for (std::size_t u = 1; u < count && result.superadditive; ++u) {
    const PlayerSet whole(u);
    // Each unordered pair {S, U \ S} once: S holds the lowest member of U.
    const PlayerSet::Mask low = PlayerSet::Mask{1} << whole.lowest();
    for_each_subset(whole, [&](PlayerSet s) {
      if (!result.superadditive || !(s.mask() & low) || s == whole) return;
      const PlayerSet t = whole - s;
      if (v(whole) < v(s) + v(t)) {
        result.superadditive = false;
        result.witness = {s, t};
      }
    });
  }
  return result;
}

}  // namespace cforge
