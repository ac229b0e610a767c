#include "cforge/game_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cforge/error.hpp"

namespace cforge {
namespace {

using nlohmann::json;

Rational read_rational(const json& value, const std::string& where) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.dump());
  if (value.is_number_float()) {
    // The shortest round-trip spelling is what the author wrote.
    char buffer[64];
    const auto res = std::to_chars(buffer, buffer + sizeof buffer, value.get<double>());
    return parse_rational(std::string_view(buffer, static_cast<std::size_t>(res.ptr - buffer)));
  }
  throw InputError(where + ": expected a number or a fraction string");
}

double read_double(const json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    if (text.find('/') != std::string::npos) return parse_rational(text).get_d();
    double out = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw InputError(where + ": malformed number \"" + text + "\"");
    }
    return out;
  }
  throw InputError(where + ": expected a number");
}

const json& require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string read_string(const json& value, const std::string& where) {
  if (!value.is_string()) throw InputError(where + ": expected a string");
  return value.get<std::string>();
}

void reject_unknown(const json& object, std::initializer_list<std::string_view> known,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw InputError(where + ": unknown field \"" + key + "\"");
  }
}

GameMode parse_mode(const std::string& text) {
  if (text == "worth-table") return GameMode::worth_table;
  if (text == "cost-curves") return GameMode::cost_curves;
  if (text == "fluid") return GameMode::fluid;
  if (text == "dtn") return GameMode::dtn;
  throw InputError("unknown mode \"" + text + "\" (expected worth-table, cost-curves, fluid or dtn)");
}

std::string rational_text(const Rational& q) { return to_string(q); }

// nlohmann writes the shortest spelling that reads back to the same double.
json double_json(double value) { return value; }

Universe universe_of(const GameFile& file) {
  if (file.mode == GameMode::worth_table) return Universe(file.players);
  std::vector<Player> players;
  for (const auto& p : file.providers) players.push_back({p.name, Role::provider});
  if (file.mode == GameMode::cost_curves) {
    for (std::size_t k = 1; k <= file.eta; ++k) players.push_back({"n" + std::to_string(k), Role::peer});
  }
  return Universe(std::move(players));
}

}  // namespace

std::string_view to_string(GameMode mode) {
  switch (mode) {
    case GameMode::worth_table: return "worth-table";
    case GameMode::cost_curves: return "cost-curves";
    case GameMode::fluid: return "fluid";
    default: return "dtn";
  }
}

bool operator==(const GameFile& a, const GameFile& b) {
  const auto& qa = a.quadrature;
  const auto& qb = b.quadrature;
  return a.mode == b.mode && a.players == b.players && a.worth == b.worth &&
         a.coalescent == b.coalescent && a.eta == b.eta && a.providers == b.providers &&
         a.params == b.params && a.weights == b.weights && a.lambda == b.lambda &&
         qa.tolerance == qb.tolerance && qa.max_depth == qb.max_depth &&
         qa.fd_step == qb.fd_step && qa.payoff_step == qb.payoff_step &&
         qa.grid_points == qb.grid_points;
}

namespace {

GameFile parse_checked(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("game file must be a JSON object");
  const std::string schema = read_string(require(root, "schema", "game file"), "schema");
  if (schema != kSchema) {
    throw InputError("unsupported schema \"" + schema + "\" (expected " + std::string(kSchema) + ")");
  }
  reject_unknown(root,
                 {"schema", "mode", "players", "worth", "coalescent", "eta", "providers", "params",
                  "weights", "quadrature", "lambda", "description"},
                 "game file");

  GameFile file;
  file.mode = parse_mode(read_string(require(root, "mode", "game file"), "mode"));

  if (auto it = root.find("params"); it != root.end()) {
    if (!it->is_object()) throw InputError("params: expected an object");
    for (const auto& [name, value] : it->items()) {
      if (name == "x") throw InputError("params: x is the curve variable and cannot be bound");
      file.params[name] = read_rational(value, "params." + name);
    }
  }
  if (auto it = root.find("quadrature"); it != root.end()) {
    if (!it->is_object()) throw InputError("quadrature: expected an object");
    reject_unknown(*it, {"tolerance", "max_depth", "fd_step", "payoff_step", "grid_points"},
                   "quadrature");
    auto& q = file.quadrature;
    if (it->contains("tolerance")) q.tolerance = read_double(it->at("tolerance"), "quadrature.tolerance");
    if (it->contains("fd_step")) q.fd_step = read_double(it->at("fd_step"), "quadrature.fd_step");
    if (it->contains("payoff_step")) q.payoff_step = read_double(it->at("payoff_step"), "quadrature.payoff_step");
    if (it->contains("max_depth")) q.max_depth = it->at("max_depth").get<int>();
    if (it->contains("grid_points")) q.grid_points = it->at("grid_points").get<int>();
    q.validate();
  }

  switch (file.mode) {
    case GameMode::worth_table: {
      const json& players = require(root, "players", "worth-table file");
      if (!players.is_array() || players.empty()) throw InputError("players: expected a non-empty array");
      for (const json& p : players) {
        if (!p.is_object()) throw InputError("players: expected objects with name and role");
        const std::string name = read_string(require(p, "name", "player"), "player name");
        const std::string role = p.contains("role") ? read_string(p.at("role"), "player role") : "peer";
        if (role != "provider" && role != "peer") {
          throw InputError("player " + name + ": role must be provider or peer");
        }
        file.players.push_back({name, role == "provider" ? Role::provider : Role::peer});
      }
      const Universe universe(file.players);
      if (universe.size() > WorthFunction::kMaxPlayers) {
        throw CapacityError("worth table with " + std::to_string(universe.size()) + " players",
                            WorthFunction::kMaxPlayers);
      }
      if (root.contains("coalescent")) {
        if (!root.at("coalescent").is_boolean()) throw InputError("coalescent: expected true or false");
        file.coalescent = root.at("coalescent").get<bool>();
      }
      const json& worth = require(root, "worth", "worth-table file");
      if (!worth.is_object()) throw InputError("worth: expected an object keyed by coalitions");
      for (const auto& [key, value] : worth.items()) {
        const PlayerSet set = universe.parse_set(key);
        const Rational q = read_rational(value, "worth of {" + key + "}");
        if (set.empty() && q != 0) throw InputError("the empty coalition must be worth 0");
        if (set.empty()) continue;
        const std::string canonical = universe.format(set);
        if (file.worth.count(canonical)) throw InputError("worth of {" + canonical + "} given twice");
        file.worth[canonical] = q;
      }
      break;
    }
    case GameMode::cost_curves:
    case GameMode::fluid:
    case GameMode::dtn: {
      if (file.mode == GameMode::cost_curves) {
        const json& eta = require(root, "eta", "cost-curves file");
        if (!eta.is_number_unsigned() || eta.get<std::size_t>() == 0) {
          throw InputError("eta: expected a positive integer");
        }
        file.eta = eta.get<std::size_t>();
      }
      if (file.mode == GameMode::dtn) {
        if (root.contains("lambda")) file.lambda = read_double(root.at("lambda"), "lambda");
      }
      const json& providers = require(root, "providers", std::string(to_string(file.mode)) + " file");
      if (!providers.is_array() || providers.empty()) {
        throw InputError("providers: expected a non-empty array");
      }
      for (const json& p : providers) {
        if (!p.is_object()) throw InputError("providers: expected objects");
        ProviderEntry entry;
        entry.name = read_string(require(p, "name", "provider"), "provider name");
        const std::string where = "provider " + entry.name;
        if (file.mode == GameMode::dtn) {
          reject_unknown(p, {"name", "g", "g_max", "x0"}, where);
          entry.dtn.lambda = file.lambda;
          entry.dtn.g = read_double(require(p, "g", where), where + ".g");
          entry.dtn.g_max = p.contains("g_max") ? read_double(p.at("g_max"), where + ".g_max") : entry.dtn.g;
          entry.dtn.x0 = read_double(require(p, "x0", where), where + ".x0");
          entry.dtn.validate();
        } else {
          reject_unknown(p, {"name", "cost"}, where);
          entry.cost = read_string(require(p, "cost", where), where + ".cost");
        }
        file.providers.push_back(std::move(entry));
      }
      if (file.mode == GameMode::dtn) {
        if (file.providers.size() != 2) throw InputError("a dtn file needs exactly two providers");
        dtn::free_fraction(file.providers[0].dtn, file.providers[1].dtn);
      }
      break;
    }
  }

  if (auto it = root.find("weights"); it != root.end()) {
    if (!it->is_object()) throw InputError("weights: expected an object keyed by name");
    for (const auto& [name, value] : it->items()) {
      const Rational w = read_rational(value, "weight of " + name);
      if (w <= 0) throw InputError("weight of " + name + " must be positive");
      file.weights[name] = w;
    }
  }

  // Build once so that every error surfaces at load time.
  const Universe universe = universe_of(file);
  for (const auto& [name, w] : file.weights) {
    if (!universe.find(name)) throw InputError("weight given for unknown player '" + name + "'");
  }
  try {
    if (file.mode == GameMode::worth_table || file.mode == GameMode::cost_curves) {
      peer_game(file);
    } else {
      fluid_game(file);
    }
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  return file;
}

}  // namespace

GameFile parse_game_file(std::string_view json_text) {
  try {
    return parse_checked(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid game file: ") + e.what());
  }
}

GameFile load_game_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_game_file(buffer.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string dump_game_file(const GameFile& file) {
  json root;
  root["schema"] = kSchema;
  root["mode"] = to_string(file.mode);
  switch (file.mode) {
    case GameMode::worth_table: {
      json players = json::array();
      for (const auto& p : file.players) players.push_back({{"name", p.name}, {"role", to_string(p.role)}});
      root["players"] = players;
      json worth = json::object();
      for (const auto& [key, value] : file.worth) worth[key] = rational_text(value);
      root["worth"] = worth;
      if (file.coalescent) root["coalescent"] = true;
      break;
    }
    case GameMode::cost_curves:
    case GameMode::fluid: {
      if (file.mode == GameMode::cost_curves) root["eta"] = file.eta;
      json providers = json::array();
      for (const auto& p : file.providers) providers.push_back({{"name", p.name}, {"cost", p.cost}});
      root["providers"] = providers;
      break;
    }
    case GameMode::dtn: {
      root["lambda"] = double_json(file.lambda);
      json providers = json::array();
      for (const auto& p : file.providers) {
        providers.push_back({{"name", p.name},
                             {"g", double_json(p.dtn.g)},
                             {"g_max", double_json(p.dtn.g_max)},
                             {"x0", double_json(p.dtn.x0)}});
      }
      root["providers"] = providers;
      break;
    }
  }
  if (!file.params.empty()) {
    json params = json::object();
    for (const auto& [k, v] : file.params) params[k] = rational_text(v);
    root["params"] = params;
  }
  if (!file.weights.empty()) {
    json weights = json::object();
    for (const auto& [k, v] : file.weights) weights[k] = rational_text(v);
    root["weights"] = weights;
  }
  if (file.mode == GameMode::fluid || file.mode == GameMode::dtn) {
    const auto& q = file.quadrature;
    root["quadrature"] = {{"tolerance", double_json(q.tolerance)},
                          {"max_depth", q.max_depth},
                          {"fd_step", double_json(q.fd_step)},
                          {"payoff_step", double_json(q.payoff_step)},
                          {"grid_points", q.grid_points}};
  }
  return root.dump(2) + "\n";
}

std::optional<PeerGameSpec> peer_game(const GameFile& file) {
  if (file.mode == GameMode::cost_curves) {
    auto params = file.params;
    params["eta"] = Rational(static_cast<unsigned long>(file.eta));
    std::vector<std::pair<std::string, CostCurve>> curves;
    for (const auto& p : file.providers) curves.emplace_back(p.name, CostCurve::parse(p.cost, params));
    return PeerGameSpec::from_costs(std::move(curves), file.eta);
  }
  if (file.mode == GameMode::worth_table && file.coalescent) {
    Universe universe(file.players);
    std::map<PlayerSet, Rational> hat;
    for (const auto& [key, value] : file.worth) hat[universe.parse_set(key)] = value;
    return PeerGameSpec::from_hat_table(std::move(universe), std::move(hat));
  }
  if (file.mode == GameMode::worth_table) return std::nullopt;
  throw InputError(std::string("a ") + std::string(to_string(file.mode)) +
                   " file does not describe a finite game");
}

WorthFunction finite_game(const GameFile& file) {
  if (auto spec = peer_game(file)) return spec->build_worth_function(WorthFunction::kMaxPlayers);
  Universe universe(file.players);
  WorthFunction v(universe);
  for (const auto& [key, value] : file.worth) v.set(universe.parse_set(key), value);
  return v;
}

WeightVector finite_weights(const GameFile& file, const Universe& universe) {
  std::vector<Rational> w(universe.size(), Rational(1));
  for (const auto& [name, value] : file.weights) w[universe.index_of(name)] = value;
  return WeightVector(std::move(w));
}

FluidGame fluid_game(const GameFile& file) {
  if (file.mode == GameMode::dtn) {
    const double free = dtn::free_fraction(file.providers[0].dtn, file.providers[1].dtn);
    std::vector<std::pair<std::string, Curve>> curves;
    for (const auto& p : file.providers) curves.emplace_back(p.name, dtn::scenario_curve(p.dtn, free));
    return FluidGame(std::move(curves), file.quadrature);
  }
  if (file.mode != GameMode::fluid) {
    throw InputError(std::string("a ") + std::string(to_string(file.mode)) +
                     " file does not describe a fluid game");
  }
  std::vector<std::pair<std::string, Curve>> curves;
  for (const auto& p : file.providers) {
    curves.emplace_back(p.name, CostCurve::parse(p.cost, file.params).as_curve());
  }
  return FluidGame(std::move(curves), file.quadrature);
}

std::vector<double> fluid_weights(const GameFile& file, const FluidGame& game) {
  std::vector<double> w(game.provider_count(), 1.0);
  for (const auto& [name, value] : file.weights) w[game.index_of(name)] = value.get_d();
  return w;
}

std::map<std::string, Rational> parse_weight_overrides(std::string_view text,
                                                       std::map<std::string, Rational> weights) {
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, end - start);
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw InputError("weights: expected name=value, got \"" + std::string(item) + "\"");
      }
      const Rational w = parse_rational(item.substr(eq + 1));
      if (w <= 0) throw InputError("weights must be positive");
      weights[std::string(item.substr(0, eq))] = w;
    }
    start = end + 1;
  }
  return weights;
}

}  // namespace cforge
