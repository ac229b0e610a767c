#include "cforge/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "cforge/axioms.hpp"
#include "cforge/dtn.hpp"
#include "cforge/dynamics.hpp"
#include "cforge/error.hpp"
#include "cforge/fluid.hpp"
#include "cforge/game_file.hpp"
#include "cforge/values.hpp"

namespace cforge::cli {
namespace {

GameFile load_with_weights(const std::string& path, const std::optional<std::string>& weights) {
  GameFile file = load_game_file(path);
  if (weights) file.weights = parse_weight_overrides(*weights, std::move(file.weights));
  return file;
}

Partition partition_or_grand(const std::optional<std::string>& text, const Universe& universe) {
  return text ? Partition::parse(*text, universe) : Partition::grand(universe.all());
}

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

std::string format_structures(const TransitionGraph& graph, const std::vector<std::size_t>& nodes,
                              const Universe& universe) {
  std::string out;
  for (std::size_t i : nodes) {
    if (!out.empty()) out += ", ";
    out += graph.nodes[i].format(universe);
  }
  return out;
}

ResidualConvention parse_convention(const std::string& text) {
  if (text == "keep-together") return ResidualConvention::keep_together;
  if (text == "scatter") return ResidualConvention::scatter;
  throw InputError("unknown residual convention \"" + text + "\" (expected keep-together or scatter)");
}

// Number of grid intervals; the step must divide [0,1] evenly.
long grid_intervals(double step) {
  if (!(step > 0.0) || step > 1.0) throw InputError("grid step must lie in (0,1]");
  const long n = std::lround(1.0 / step);
  if (n < 1 || std::fabs(n * step - 1.0) > 1e-9) throw InputError("grid step must divide 1 evenly");
  return n;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string pass_fail(bool b) { return b ? "pass" : "fail"; }

}  // namespace

int run_payoff(const PayoffOptions& options, std::ostream& out) {
  const GameFile file = load_with_weights(options.file, options.weights);
  const WorthFunction v = finite_game(file);
  const Universe& universe = v.universe();
  const Partition partition = partition_or_grand(options.partition, universe);

  PayoffVector phi;
  if (options.value == "shapley") {
    if (!partition.is_grand()) throw InputError("the Shapley value ignores partitions; use --value ad or chi");
    phi = shapley(v);
  } else if (parse_value_kind(options.value) == ValueKind::ad) {
    phi = ad_value(v, partition);
  } else {
    phi = chi_value(v, partition, finite_weights(file, universe));
  }

  if (options.format == "csv") {
    out << "player,role,payoff,approx\n";
    for (std::size_t i = 0; i < universe.size(); ++i) {
      out << universe.player(i).name << ',' << to_string(universe.player(i).role) << ','
          << to_string(phi[i]) << ',' << format_double(phi[i].get_d(), 12) << '\n';
    }
    return ok;
  }
  if (options.format != "table") throw InputError("unknown format \"" + options.format + "\"");
  out << "partition: " << partition.format(universe) << '\n';
  std::size_t width = 8;
  for (const auto& p : universe.players()) width = std::max(width, p.name.size() + 2);
  out << pad("player", width) << pad("role", 10) << "payoff\n";
  for (std::size_t i = 0; i < universe.size(); ++i) {
    out << pad(universe.player(i).name, width) << pad(std::string(to_string(universe.player(i).role)), 10)
        << format_fraction(phi[i]) << '\n';
  }
  return ok;
}

int run_dynamics(const DynamicsOptions& options, std::ostream& out) {
  const GameFile file = load_with_weights(options.file, options.weights);
  const WorthFunction v = finite_game(file);
  const Universe& universe = v.universe();
  const ValueKind kind = parse_value_kind(options.value);
  const WeightVector weights = finite_weights(file, universe);
  const ResidualConvention convention = parse_convention(options.convention);
  const TransitionGraph graph = build_graph(v, kind, weights, convention);

  if (options.format == "edges") {
    out << export_edges(graph, universe);
    return ok;
  }
  if (options.format == "dot") {
    out << export_dot(graph, universe);
    return ok;
  }
  if (options.format != "report") throw InputError("unknown format \"" + options.format + "\"");

  const RecurrenceReport report = recurrence(graph);
  out << "value: " << to_string(kind) << '\n';
  out << "structures: " << graph.nodes.size() << '\n';
  out << "stable: " << (report.stable.empty() ? "none" : format_structures(graph, report.stable, universe))
      << '\n';
  for (const auto& cls : report.recurrent) {
    if (cls.size() == 1 && graph.out_degree(cls.front()) == 0) continue;
    out << "recurrent class of size " << cls.size() << ": "
        << format_structures(graph, cls, universe) << '\n';
  }
  out << "transient: " << report.transient.size() << '\n';
  out << "blocking coalitions:\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    out << "  " << graph.nodes[i].format(universe) << ": ";
    if (graph.out_degree(i) == 0) out << "none";
    for (std::size_t e = graph.offsets[i]; e < graph.offsets[i + 1]; ++e) {
      if (e != graph.offsets[i]) out << ", ";
      out << '{' << universe.format(graph.edges[e].coalition) << '}';
    }
    out << '\n';
  }

  if (options.start) {
    TrajectoryOptions topt;
    if (options.policy == "random") topt.policy = ChoicePolicy::random;
    else if (options.policy != "first") throw InputError("unknown policy \"" + options.policy + "\"");
    topt.seed = options.seed;
    topt.max_steps = options.steps;
    topt.convention = convention;
    const Trajectory t = trajectory(v, kind, weights, Partition::parse(*options.start, universe), topt);
    out << "trajectory:\n";
    for (const auto& [from, coalition] : t.steps) {
      out << "  " << from.format(universe) << " --{" << universe.format(coalition) << "}-->\n";
    }
    out << "  " << t.final.format(universe) << (t.stabilized ? " (stable)" : " (step limit reached)")
        << '\n';
  }
  return ok;
}

int run_fluid(const FluidOptions& options, std::ostream& out, std::ostream& err) {
  GameFile file = load_with_weights(options.file, options.weights);
  if (options.tolerance) {
    file.quadrature.tolerance = *options.tolerance;
    file.quadrature.validate();
  }
  const FluidGame game = fluid_game(file);
  const ValueKind kind = parse_value_kind(options.value);
  const std::vector<double> weights = fluid_weights(file, game);

  PlayerSet zbar;
  std::string token;
  for (char c : options.coalition + " ") {
    if (c == ' ' || c == ',' || c == '{' || c == '}') {
      if (!token.empty()) zbar = zbar.with(game.index_of(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (zbar.empty()) throw InputError("--coalition must name at least one provider");

  std::ofstream file_out;
  std::ostream* csv = &out;
  if (options.out) {
    file_out.open(*options.out, std::ios::binary);
    if (!file_out) throw InputError("cannot write " + *options.out);
    csv = &file_out;
  }

  const std::vector<std::size_t> members = zbar.members();
  const std::string prefix(to_string(kind));
  *csv << 'x';
  for (std::size_t p : members) *csv << ',' << prefix << '_' << game.name(p);
  *csv << ',' << prefix << "_peer\n";

  std::optional<FluidPayoffs> grand;
  int status = ok;
  try {
    if (kind == ValueKind::chi) grand = fluid_shapley(game);
  } catch (const NumericalError& e) {
    err << "grand-coalition payoffs failed: " << e.what() << '\n';
    status = numerical_error;
  }
  const long n = grid_intervals(options.grid);
  for (long k = 0; k <= n; ++k) {
    const double x = static_cast<double>(k) / n;
    *csv << format_double(x, 12);
    try {
      if (status != ok && kind == ValueKind::chi) throw NumericalError("no grand-coalition payoffs", NAN);
      const FluidPayoffs f = fluid_payoffs(game, zbar, x, kind, weights, grand);
      for (std::size_t p : members) *csv << ',' << format_double(f.provider.at(p), 12);
      *csv << ',' << format_double(f.peer, 12) << '\n';
    } catch (const NumericalError& e) {
      for (std::size_t i = 0; i <= members.size(); ++i) *csv << ",nan";
      *csv << '\n';
      err << "x = " << format_double(x) << ": " << e.what() << '\n';
      status = numerical_error;
    }
  }

  if (options.summary) {
    std::ostream& s = options.out ? out : err;
    const PlayerSet idle = noncontributing_providers(game);
    s << "noncontributing providers:";
    if (idle.empty()) s << " none";
    for (std::size_t p : idle.members()) s << ' ' << game.name(p);
    s << '\n';
    if (game.provider_count() == 2) {
      for (ValueKind k : {ValueKind::ad, ValueKind::chi}) {
        const SplitEquilibrium eq = peer_split_equilibrium(game, 0, 1, k, weights);
        s << to_string(k) << " split: " << game.name(0) << " gets " << format_double(eq.share)
          << " of the peers (" << to_string(eq.outcome) << "), peer payoff "
          << format_double(eq.peer_payoff) << '\n';
      }
    }
  }
  return status;
}

int run_dtn(const DtnOptions& options, std::ostream& out) {
  GameFile file = load_game_file(options.file);
  if (file.mode != GameMode::dtn) throw InputError("the dtn command needs a dtn file");
  if (options.tolerance) {
    file.quadrature.tolerance = *options.tolerance;
    file.quadrature.validate();
  }
  const ProviderEntry& p = file.providers[0];
  const ProviderEntry& q = file.providers[1];
  const dtn::ScenarioReport report = dtn::scenario_report(p.dtn, q.dtn, file.quadrature);

  out << "free fraction: " << format_double(report.free) << '\n';
  auto describe = [&](const char* label, const dtn::ScenarioOutcome& o) {
    out << label << ": " << p.name << " takes " << format_double(o.p_share) << ", " << q.name
        << " takes " << format_double(o.q_share) << " (" << to_string(o.equilibrium.outcome)
        << "); per-peer payoff " << format_double(o.equilibrium.peer_payoff) << '\n';
  };
  describe("A-D", report.ad);
  describe("chi", report.chi);

  const bool p_leads = report.ad.p_share >= report.ad.q_share;
  const std::string& leader = p_leads ? p.name : q.name;
  char taken[32];
  std::snprintf(taken, sizeof taken, "%.3f", p_leads ? report.ad.p_share : report.ad.q_share);
  auto monopoly = [](const dtn::ScenarioOutcome& o) {
    return o.equilibrium.outcome == SplitOutcome::monopoly_first ||
           o.equilibrium.outcome == SplitOutcome::monopoly_second;
  };
  out << leader << " takes " << taken << " of free users; monopoly: " << yes_no(monopoly(report.ad))
      << " (A-D), " << yes_no(monopoly(report.chi)) << " (chi)\n";
  out << "peers earn at least as much under chi: " << yes_no(report.chi_pays_peers_more) << '\n';

  if (options.out) {
    std::ofstream csv(*options.out, std::ios::binary);
    if (!csv) throw InputError("cannot write " + *options.out);
    const Curve cp = dtn::cost_curve(p.dtn);
    const Curve cq = dtn::cost_curve(q.dtn);
    csv << "x,cost_" << p.name << ",cost_" << q.name << '\n';
    const long n = grid_intervals(options.grid);
    for (long k = 0; k <= n; ++k) {
      const double x = static_cast<double>(k) / n;
      csv << format_double(x, 12) << ',' << format_double(cp(x), 12) << ','
          << format_double(cq(x), 12) << '\n';
    }
  }
  return ok;
}

int run_check_axioms(const AxiomOptions& options, std::ostream& out) {
  const GameFile file = load_with_weights(options.file, options.weights);
  const WorthFunction v = finite_game(file);
  const Universe& universe = v.universe();
  const Partition partition = partition_or_grand(options.partition, universe);
  const ValueKind kind = parse_value_kind(options.value);
  const WeightVector weights = finite_weights(file, universe);
  const ValueFunction value = value_function(kind, weights);

  const AxiomReport report = check_axioms(v, partition, value);
  out << "value: " << to_string(kind) << '\n';
  out << "partition: " << partition.format(universe) << '\n';
  out << "CE: " << pass_fail(report.coalition_efficiency) << '\n';
  out << "CS: " << pass_fail(report.coalition_symmetry) << '\n';
  out << "NP: " << pass_fail(report.null_player) << '\n';
  out << "GNP: " << pass_fail(report.grand_null_player.value_or(false)) << '\n';
  if (options.finer) {
    const Partition finer = Partition::parse(*options.finer, universe);
    out << "WSP: " << pass_fail(check_weighted_splitting(v, partition, finer, weights, value)) << '\n';
  }
  if (options.other) {
    const WorthFunction w = finite_game(load_game_file(*options.other));
    if (w.universe() != universe) throw InputError("additivity needs two games on the same players");
    out << "ADD: " << pass_fail(check_additivity(v, w, partition, value)) << '\n';
  }
  return ok;
}

int run_canonical(const CanonicalOptions& options, std::ostream& out) {
  out << dump_game_file(load_game_file(options.file));
  return ok;
}

int report_exception(std::ostream& err) {
  try {
    throw;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return capacity_error;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return numerical_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cforge::cli
