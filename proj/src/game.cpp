#include "cforge/game.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "cforge/error.hpp"

namespace cforge {

std::string_view to_string(Role role) { return role == Role::provider ? "provider" : "peer"; }

std::vector<std::size_t> PlayerSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

// ---------------------------------------------------------------- Universe

Universe::Universe(std::vector<Player> players) : players_(std::move(players)) {
  if (players_.size() > PlayerSet::kMaxPlayers) {
    throw CapacityError("too many players", PlayerSet::kMaxPlayers);
  }
  std::unordered_set<std::string> seen;
  for (const auto& p : players_) {
    if (p.name.empty()) throw InputError("player names must be non-empty");
    for (char c : p.name) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}' || c == '|' ||
          c == ',') {
        throw InputError("invalid character in player name '" + p.name + "'");
      }
    }
    if (!seen.insert(p.name).second) throw InputError("duplicate player name '" + p.name + "'");
  }
}

Universe Universe::anonymous(std::size_t count) {
  std::vector<Player> players;
  for (std::size_t i = 0; i < count; ++i) players.push_back({std::to_string(i + 1), Role::peer});
  return Universe(std::move(players));
}

PlayerSet Universe::providers() const {
  PlayerSet s;
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (players_[i].role == Role::provider) s = s.with(i);
  }
  return s;
}

PlayerSet Universe::peers() const { return all() - providers(); }

std::optional<std::size_t> Universe::find(std::string_view name) const {
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (players_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Universe::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown player '" + std::string(name) + "'");
}

std::string Universe::format(PlayerSet set) const {
  std::string out;
  for (std::size_t i : set.members()) {
    if (!out.empty()) out += ' ';
    out += i < players_.size() ? players_[i].name : "#" + std::to_string(i);
  }
  return out;
}

PlayerSet Universe::parse_set(std::string_view text) const {
  PlayerSet set;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    const std::size_t i = index_of(token);
    if (set.contains(i)) throw InputError("player '" + token + "' listed twice");
    set = set.with(i);
    token.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return set;
}

// ----------------------------------------------------------- WorthFunction

WorthFunction::WorthFunction(Universe universe) : universe_(std::move(universe)) {
  if (universe_.size() > kMaxPlayers) {
    throw CapacityError("worth table too large for " + std::to_string(universe_.size()) + " players",
                        kMaxPlayers);
  }
  values_.assign(std::size_t{1} << universe_.size(), Rational(0));
}

WorthFunction::WorthFunction(Universe universe, std::vector<Rational> values)
    : WorthFunction(std::move(universe)) {
  if (values.size() != values_.size()) {
    throw StructuralError("worth table needs " + std::to_string(values_.size()) + " entries, got " +
                          std::to_string(values.size()));
  }
  if (values[0] != 0) throw StructuralError("worth of the empty coalition must be 0");
  values_ = std::move(values);
}

void WorthFunction::set(PlayerSet set, Rational value) {
  if (!set.is_subset_of(players())) throw StructuralError("coalition outside the player universe");
  if (set.empty() && value != 0) throw StructuralError("worth of the empty coalition must be 0");
  values_[set.mask()] = std::move(value);
}

WorthFunction WorthFunction::operator+(const WorthFunction& other) const {
  if (!(universe_ == other.universe_)) throw StructuralError("adding games over different universes");
  WorthFunction out(universe_);
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] + other.values_[i];
  return out;
}

// --------------------------------------------------------------- Partition

Partition::Partition(std::vector<PlayerSet> blocks, PlayerSet ground)
    : blocks_(std::move(blocks)), ground_(ground) {
  PlayerSet covered;
  for (PlayerSet b : blocks_) {
    if (b.empty()) throw StructuralError("partition contains an empty block");
    if (b.intersects(covered)) throw StructuralError("partition blocks overlap");
    covered = covered | b;
  }
  if (covered != ground_) throw StructuralError("partition blocks do not cover the player set");
  std::sort(blocks_.begin(), blocks_.end(),
            [](PlayerSet a, PlayerSet b) { return a.lowest() < b.lowest(); });
}

Partition Partition::grand(PlayerSet ground) {
  if (ground.empty()) return Partition({}, ground);
  return Partition({ground}, ground);
}

Partition Partition::singletons(PlayerSet ground) {
  std::vector<PlayerSet> blocks;
  for (std::size_t i : ground.members()) blocks.push_back(PlayerSet::singleton(i));
  return Partition(std::move(blocks), ground);
}

PlayerSet Partition::block_of(std::size_t index) const {
  for (PlayerSet b : blocks_) {
    if (b.contains(index)) return b;
  }
  throw StructuralError("player " + std::to_string(index) + " is not covered by the partition");
}

bool Partition::has_block(PlayerSet block) const {
  return std::find(blocks_.begin(), blocks_.end(), block) != blocks_.end();
}

bool Partition::refines(const Partition& coarser) const {
  if (ground_ != coarser.ground_) return false;
  return std::all_of(blocks_.begin(), blocks_.end(), [&](PlayerSet b) {
    return b.is_subset_of(coarser.block_of(b.lowest()));
  });
}

std::string Partition::format(const Universe& universe) const {
  std::string out = "{";
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k > 0) out += " | ";
    out += universe.format(blocks_[k]);
  }
  return out + "}";
}

Partition Partition::parse(std::string_view text, const Universe& universe) {
  std::vector<PlayerSet> blocks;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    const std::string_view piece =
        text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    const PlayerSet block = universe.parse_set(piece);
    if (block.empty()) throw InputError("empty block in partition '" + std::string(text) + "'");
    blocks.push_back(block);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return Partition(std::move(blocks), universe.all());
}

// ------------------------------------------------------- payoffs / weights

Rational PayoffVector::sum(PlayerSet set) const {
  Rational s(0);
  for (std::size_t i : set.members()) s += payoff_.at(i);
  return s;
}

WeightVector::WeightVector(std::vector<Rational> weights) : weight_(std::move(weights)) {
  for (const auto& w : weight_) {
    if (w <= 0) throw InputError("weights must be strictly positive, got " + w.get_str());
  }
}

WeightVector WeightVector::uniform(std::size_t players) {
  return WeightVector(std::vector<Rational>(players, Rational(1)));
}

Rational WeightVector::sum(PlayerSet set) const {
  Rational s(0);
  for (std::size_t i : set.members()) s += weight_.at(i);
  return s;
}

}  // namespace cforge
