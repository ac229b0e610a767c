#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cforge/rational.hpp"

namespace cforge {

enum class Role { provider, peer };

std::string_view to_string(Role role);

struct PlayerId {
  std::size_t index = 0;
  Role role = Role::peer;

  friend bool operator==(const PlayerId&, const PlayerId&) = default;
};

/// A coalition, stored as a bitmask over player indices.
class PlayerSet {
 public:
  using Mask = std::uint64_t;
  static constexpr std::size_t kMaxPlayers = 64;

  constexpr PlayerSet() = default;
  constexpr explicit PlayerSet(Mask mask) : mask_(mask) {}

  static constexpr PlayerSet singleton(std::size_t index) { return PlayerSet(Mask{1} << index); }
  static constexpr PlayerSet first(std::size_t count) {
    return PlayerSet(count >= 64 ? ~Mask{0} : (Mask{1} << count) - 1);
  }

  constexpr Mask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool contains(std::size_t index) const { return (mask_ >> index) & 1U; }
  constexpr bool is_subset_of(PlayerSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(PlayerSet other) const { return (mask_ & other.mask_) != 0; }
  /// Index of the least member; the set must be non-empty.
  constexpr std::size_t lowest() const { return static_cast<std::size_t>(std::countr_zero(mask_)); }

  constexpr PlayerSet with(std::size_t index) const { return PlayerSet(mask_ | (Mask{1} << index)); }
  constexpr PlayerSet without(std::size_t index) const { return PlayerSet(mask_ & ~(Mask{1} << index)); }

  std::vector<std::size_t> members() const;

  constexpr PlayerSet operator|(PlayerSet o) const { return PlayerSet(mask_ | o.mask_); }
  constexpr PlayerSet operator&(PlayerSet o) const { return PlayerSet(mask_ & o.mask_); }
  constexpr PlayerSet operator-(PlayerSet o) const { return PlayerSet(mask_ & ~o.mask_); }

  friend constexpr bool operator==(PlayerSet, PlayerSet) = default;
  friend constexpr auto operator<=>(PlayerSet a, PlayerSet b) { return a.mask_ <=> b.mask_; }

 private:
  Mask mask_ = 0;
};

struct Player {
  std::string name;
  Role role = Role::peer;

  friend bool operator==(const Player&, const Player&) = default;
};

/// The ordered set of players of a game. Player i has index i.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<Player> players);

  /// Players named "1", "2", ..., all with role peer. Handy for abstract games.
  static Universe anonymous(std::size_t count);

  std::size_t size() const { return players_.size(); }
  PlayerSet all() const { return PlayerSet::first(players_.size()); }
  const Player& player(std::size_t index) const { return players_.at(index); }
  PlayerId id(std::size_t index) const { return {index, players_.at(index).role}; }
  const std::vector<Player>& players() const { return players_; }

  PlayerSet providers() const;
  PlayerSet peers() const;

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws InputError for unknown names.
  std::size_t index_of(std::string_view name) const;

  /// Space-separated member names in index order ("p1 n1").
  std::string format(PlayerSet set) const;
  /// Inverse of format(); accepts whitespace or comma separators and optional braces.
  PlayerSet parse_set(std::string_view text) const;

  friend bool operator==(const Universe&, const Universe&) = default;

 private:
  std::vector<Player> players_;
};

/// Dense worth table v : 2^N -> Q, indexed by bitmask, with v(empty) = 0.
class WorthFunction {
 public:
  static constexpr std::size_t kMaxPlayers = 24;

  WorthFunction() = default;
  explicit WorthFunction(Universe universe);
  WorthFunction(Universe universe, std::vector<Rational> values);

  const Universe& universe() const { return universe_; }
  std::size_t player_count() const { return universe_.size(); }
  PlayerSet players() const { return universe_.all(); }

  const Rational& operator()(PlayerSet set) const { return values_[set.mask()]; }
  void set(PlayerSet set, Rational value);
  std::span<const Rational> values() const { return values_; }

  WorthFunction operator+(const WorthFunction& other) const;

  friend bool operator==(const WorthFunction&, const WorthFunction&) = default;

 private:
  Universe universe_;
  std::vector<Rational> values_;
};

/// A coalition structure: disjoint non-empty blocks covering a ground set.
/// Blocks are kept sorted by least member, which makes equal partitions
/// compare equal.
class Partition {
 public:
  Partition() = default;

  /// Validates and canonicalizes; throws StructuralError on overlap, empty
  /// blocks, or blocks that do not cover `ground`.
  Partition(std::vector<PlayerSet> blocks, PlayerSet ground);

  static Partition grand(PlayerSet ground);
  static Partition singletons(PlayerSet ground);

  const std::vector<PlayerSet>& blocks() const { return blocks_; }
  PlayerSet ground() const { return ground_; }
  std::size_t size() const { return blocks_.size(); }

  /// C(i): the block containing player i.
  PlayerSet block_of(std::size_t index) const;
  bool has_block(PlayerSet block) const;
  bool is_grand() const { return blocks_.size() == 1; }
  /// True when every block of *this is contained in some block of `coarser`.
  bool refines(const Partition& coarser) const;

  /// "{p1 n1 | p2 n2}"
  std::string format(const Universe& universe) const;
  /// Parses "{p1 n1 | p2 n2}" (braces optional); the ground set is the universe.
  static Partition parse(std::string_view text, const Universe& universe);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.blocks_ <=> b.blocks_;
  }

 private:
  std::vector<PlayerSet> blocks_;
  PlayerSet ground_;
};

/// One exact payoff per player of the universe.
class PayoffVector {
 public:
  PayoffVector() = default;
  explicit PayoffVector(std::size_t players) : payoff_(players) {}
  explicit PayoffVector(std::vector<Rational> payoff) : payoff_(std::move(payoff)) {}

  std::size_t size() const { return payoff_.size(); }
  Rational& operator[](std::size_t i) { return payoff_[i]; }
  const Rational& operator[](std::size_t i) const { return payoff_[i]; }
  Rational sum(PlayerSet set) const;
  const std::vector<Rational>& values() const { return payoff_; }

  friend bool operator==(const PayoffVector&, const PayoffVector&) = default;

 private:
  std::vector<Rational> payoff_;
};

/// Strictly positive player weights for the chi value.
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws InputError if any weight is not strictly positive.
  explicit WeightVector(std::vector<Rational> weights);
  static WeightVector uniform(std::size_t players);

  std::size_t size() const { return weight_.size(); }
  const Rational& operator[](std::size_t i) const { return weight_[i]; }
  Rational sum(PlayerSet set) const;

 private:
  std::vector<Rational> weight_;
};

/// Calls fn(sub) for every subset of `set`, including the empty set and `set`
/// itself, in increasing mask order.
template <typename Fn>
void for_each_subset(PlayerSet set, Fn&& fn) {
  const PlayerSet::Mask full = set.mask();
  PlayerSet::Mask sub = 0;
  while (true) {
    fn(PlayerSet(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

}  // namespace cforge
