// cforge: payoffs, coalition dynamics and fluid-limit curves for
// peer-assisted content distribution games.

#include <iostream>

#include <CLI11.hpp>

#include "cforge/commands.hpp"

namespace cli = cforge::cli;

int main(int argc, char** argv) {
  CLI::App app{"Profit sharing and coalition dynamics for peer-assisted services"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cforge 1.0.0");

  cli::PayoffOptions payoff;
  auto* cmd_payoff = app.add_subcommand("payoff", "Shapley, A-D or chi payoffs of a finite game");
  cmd_payoff->add_option("file", payoff.file, "game file")->required();
  cmd_payoff->add_option("--value", payoff.value, "shapley, ad or chi")->capture_default_str();
  cmd_payoff->add_option("--partition", payoff.partition, "coalition structure, e.g. \"{p1 n1 | p2 n2}\"");
  cmd_payoff->add_option("--weights", payoff.weights, "chi weights, name=value,...");
  cmd_payoff->add_option("--format", payoff.format, "table or csv")->capture_default_str();

  cli::DynamicsOptions dynamics;
  auto* cmd_dynamics = app.add_subcommand("dynamics", "Blocking-coalition dynamics over all structures");
  cmd_dynamics->add_option("file", dynamics.file, "game file")->required();
  cmd_dynamics->add_option("--value", dynamics.value, "ad or chi")->capture_default_str();
  cmd_dynamics->add_option("--weights", dynamics.weights, "chi weights, name=value,...");
  cmd_dynamics->add_option("--format", dynamics.format, "report, edges or dot")->capture_default_str();
  cmd_dynamics->add_option("--convention", dynamics.convention,
                           "what remains of a broken block: keep-together or scatter")
      ->capture_default_str();
  cmd_dynamics->add_option("--start", dynamics.start, "also follow a trajectory from this structure");
  cmd_dynamics->add_option("--policy", dynamics.policy, "first or random")->capture_default_str();
  cmd_dynamics->add_option("--seed", dynamics.seed, "seed of the random policy")->capture_default_str();
  cmd_dynamics->add_option("--steps", dynamics.steps, "trajectory step limit")->capture_default_str();

  cli::FluidOptions fluid;
  auto* cmd_fluid = app.add_subcommand("fluid", "Fluid-limit payoff curves as CSV");
  cmd_fluid->add_option("file", fluid.file, "fluid or dtn game file")->required();
  cmd_fluid->add_option("--coalition", fluid.coalition, "providers of the coalition, e.g. \"p q\"")
      ->required();
  cmd_fluid->add_option("--value", fluid.value, "ad or chi")->capture_default_str();
  cmd_fluid->add_option("--weights", fluid.weights, "provider weights, name=value,...");
  cmd_fluid->add_option("--grid", fluid.grid, "step of the x grid")->capture_default_str();
  cmd_fluid->add_option("--tolerance", fluid.tolerance, "quadrature tolerance");
  cmd_fluid->add_option("--out", fluid.out, "CSV file (default: stdout)");
  cmd_fluid->add_flag("--summary", fluid.summary, "noncontributing providers and peer split");

  cli::DtnOptions dtn;
  auto* cmd_dtn = app.add_subcommand("dtn", "Two-provider delay-tolerant network scenario");
  cmd_dtn->add_option("file", dtn.file, "dtn game file")->required();
  cmd_dtn->add_option("--grid", dtn.grid, "step of the cost-curve CSV")->capture_default_str();
  cmd_dtn->add_option("--tolerance", dtn.tolerance, "quadrature tolerance");
  cmd_dtn->add_option("--out", dtn.out, "cost-curve CSV file");

  cli::AxiomOptions axioms;
  auto* cmd_axioms = app.add_subcommand("check-axioms", "Check CE, CS, NP, GNP (and WSP, ADD)");
  cmd_axioms->add_option("file", axioms.file, "game file")->required();
  cmd_axioms->add_option("--value", axioms.value, "ad or chi")->capture_default_str();
  cmd_axioms->add_option("--partition", axioms.partition, "coalition structure");
  cmd_axioms->add_option("--weights", axioms.weights, "chi weights, name=value,...");
  cmd_axioms->add_option("--finer", axioms.finer, "refinement for the weighted-splitting check");
  cmd_axioms->add_option("--other", axioms.other, "second game file for the additivity check");

  cli::CanonicalOptions canonical;
  auto* cmd_canonical = app.add_subcommand("canonical", "Print the canonical form of a game file");
  cmd_canonical->add_option("file", canonical.file, "game file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::input_error;
  }

  try {
    if (cmd_payoff->parsed()) return cli::run_payoff(payoff, std::cout);
    if (cmd_dynamics->parsed()) return cli::run_dynamics(dynamics, std::cout);
    if (cmd_fluid->parsed()) return cli::run_fluid(fluid, std::cout, std::cerr);
    if (cmd_dtn->parsed()) return cli::run_dtn(dtn, std::cout);
    if (cmd_axioms->parsed()) return cli::run_check_axioms(axioms, std::cout);
    if (cmd_canonical->parsed()) return cli::run_canonical(canonical, std::cout);
  } catch (...) {
    return cli::report_exception(std::cerr);
  }
  return cli::input_error;
}
