#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cforge/dtn.hpp"
#include "cforge/fluid.hpp"
#include "cforge/game.hpp"
#include "cforge/peer_worth.hpp"

namespace cforge {

inline constexpr std::string_view kSchema = "coalition-forge/1";

enum class GameMode { worth_table, cost_curves, fluid, dtn };

std::string_view to_string(GameMode mode);

struct ProviderEntry {
  std::string name;
  std::string cost;  // expression in x (cost-curves and fluid modes)
  dtn::DtnParams dtn;  // dtn mode

  friend bool operator==(const ProviderEntry& a, const ProviderEntry& b) {
    return a.name == b.name && a.cost == b.cost && a.dtn.lambda == b.dtn.lambda &&
           a.dtn.g == b.dtn.g && a.dtn.g_max == b.dtn.g_max && a.dtn.x0 == b.dtn.x0;
  }
};

/// In-memory form of a game file (JSON with a "schema" field).
///
/// worth-table: "players" with roles and "worth" keyed by space-separated
///   names; with "coalescent": true the listed values are single-provider
///   worths and every other coalition takes its best split.
/// cost-curves: "eta" peers and one total cost expression per provider;
///   the identifier eta is bound in every expression.
/// fluid: normalized per-peer cost expressions on [0,1].
/// dtn: "lambda" and per-provider "g", "g_max", "x0".
struct GameFile {
  GameMode mode = GameMode::worth_table;
  std::vector<Player> players;                       // worth-table
  std::map<std::string, Rational> worth;             // worth-table, canonical keys
  bool coalescent = false;                           // worth-table
  std::size_t eta = 0;                               // cost-curves
  std::vector<ProviderEntry> providers;              // cost-curves, fluid, dtn
  std::map<std::string, Rational, std::less<>> params;  // cost-curves, fluid
  std::map<std::string, Rational> weights;           // by player or provider name
  QuadratureConfig quadrature;
  double lambda = 1.0;                               // dtn

  friend bool operator==(const GameFile& a, const GameFile& b);
};

/// Parses and validates. Every problem is reported as an InputError.
GameFile parse_game_file(std::string_view json_text);
GameFile load_game_file(const std::filesystem::path& path);

/// Canonical JSON: sorted keys, exact fractions as strings.
std::string dump_game_file(const GameFile& file);

/// Finite game of a worth-table or cost-curves file.
WorthFunction finite_game(const GameFile& file);
std::optional<PeerGameSpec> peer_game(const GameFile& file);

/// Weights from the file, defaulting to 1 for unlisted players.
WeightVector finite_weights(const GameFile& file, const Universe& universe);

/// Fluid game of a fluid or dtn file (dtn: the scenario over the free users).
FluidGame fluid_game(const GameFile& file);
std::vector<double> fluid_weights(const GameFile& file, const FluidGame& game);

/// Applies "name=value,name=value" on top of `weights`.
std::map<std::string, Rational> parse_weight_overrides(std::string_view text,
                                                       std::map<std::string, Rational> weights);

}  // namespace cforge
