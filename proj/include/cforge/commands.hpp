#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace cforge::cli {

enum ExitCode : int { ok = 0, input_error = 2, capacity_error = 3, numerical_error = 4 };

struct PayoffOptions {
  std::string file;
  std::string value = "shapley";  // shapley | ad | chi
  std::optional<std::string> partition;
  std::optional<std::string> weights;
  std::string format = "table";  // table | csv
};

struct DynamicsOptions {
  std::string file;
  std::string value = "ad";
  std::optional<std::string> weights;
  std::string format = "report";  // report | edges | dot
  std::string convention = "keep-together";
  std::optional<std::string> start;  // print a trajectory from here
  std::string policy = "first";
  unsigned long long seed = 0;
  std::size_t steps = 100;
};

struct FluidOptions {
  std::string file;
  std::string coalition;  // provider names
  std::string value = "ad";
  std::optional<std::string> weights;
  double grid = 0.01;
  std::optional<double> tolerance;
  std::optional<std::string> out;
  bool summary = false;
};

struct DtnOptions {
  std::string file;
  double grid = 0.01;
  std::optional<double> tolerance;
  std::optional<std::string> out;
};

struct AxiomOptions {
  std::string file;
  std::string value = "ad";
  std::optional<std::string> partition;
  std::optional<std::string> weights;
  std::optional<std::string> finer;  // enables the weighted-splitting check
  std::optional<std::string> other;  // second game file for the additivity check
};

struct CanonicalOptions {
  std::string file;
};

/// Each command writes its result to `out`; errors propagate as exceptions
/// from the library (see exit_code_for).
int run_payoff(const PayoffOptions& options, std::ostream& out);
int run_dynamics(const DynamicsOptions& options, std::ostream& out);
int run_fluid(const FluidOptions& options, std::ostream& out, std::ostream& err);
int run_dtn(const DtnOptions& options, std::ostream& out);
int run_check_axioms(const AxiomOptions& options, std::ostream& out);
int run_canonical(const CanonicalOptions& options, std::ostream& out);

/// Maps the active exception to an exit code and prints its message.
int report_exception(std::ostream& err);

}  // namespace cforge::cli
