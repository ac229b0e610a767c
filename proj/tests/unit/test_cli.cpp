#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cforge/commands.hpp"
#include "doctest.h"

using namespace cforge;

namespace {

std::string data(const char* name) { return std::string(CFORGE_DATA_DIR) + "/" + name; }

std::filesystem::path scratch(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / "cforge-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

struct Run {
  int code = -1;
  std::string out;
};

// Runs the installed binary; stderr is discarded.
Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(CFORGE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string payoff(cli::PayoffOptions o) {
  std::ostringstream out;
  CHECK(cli::run_payoff(o, out) == 0);
  return out.str();
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("payoff tables") {
  cli::PayoffOptions chi;
  chi.file = data("example3.json");
  chi.value = "chi";
  chi.partition = "{p1 p2 | n1 n2}";
  const std::string table = payoff(chi);
  CHECK(table.find("p1      provider  -1") != std::string::npos);
  CHECK(table.find("n1      peer      1/2") != std::string::npos);
  CHECK(table.find("n2      peer      -1/2") != std::string::npos);

  cli::PayoffOptions shapley;
  shapley.file = data("example3.json");
  shapley.format = "csv";
  cli::PayoffOptions ad = shapley;
  ad.value = "ad";
  ad.partition = "{p1 p2 n1 n2}";
  CHECK(payoff(shapley) == payoff(ad));
  CHECK(payoff(shapley).find("p2,provider,19/6,") != std::string::npos);
}

TEST_CASE("dynamics report") {
  cli::DynamicsOptions o;
  o.file = data("example3.json");
  std::ostringstream ad;
  CHECK(cli::run_dynamics(o, ad) == 0);
  CHECK(ad.str().find("stable: none") != std::string::npos);
  CHECK(ad.str().find("recurrent class of size 4") != std::string::npos);

  o.value = "chi";
  std::ostringstream chi;
  CHECK(cli::run_dynamics(o, chi) == 0);
  CHECK(chi.str().find("stable: {p1 n1 | p2 | n2}, {p1 n2 | p2 n1}") != std::string::npos);

  o.start = "{p1 | p2 n1 n2}";
  o.value = "ad";
  o.steps = 8;
  std::ostringstream walk;
  CHECK(cli::run_dynamics(o, walk) == 0);
  CHECK(walk.str().find("{p1 n1 | p2 n2}") != std::string::npos);
}

TEST_CASE("fluid curves") {
  cli::FluidOptions o;
  o.file = data("example2.json");
  o.coalition = "p";
  o.grid = 0.25;
  std::ostringstream out, err;
  CHECK(cli::run_fluid(o, out, err) == 0);
  const auto rows = csv(out.str());
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"x", "ad_p", "ad_peer"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    CHECK(std::abs(std::stod(rows[i][1]) - 2 * std::pow(x, 1.5) / 5) < 1e-6);
    if (x > 0) CHECK(std::abs(std::stod(rows[i][2]) - 3 * std::sqrt(x) / 5) < 1e-6);
  }

  o.coalition = "q";
  std::ostringstream q_out, q_err;
  CHECK(cli::run_fluid(o, q_out, q_err) == 0);
  for (std::size_t i = 1; i < 6; ++i) CHECK(std::abs(std::stod(csv(q_out.str())[i][2]) - 1.0 / 3) < 1e-6);

  const Run first = run("fluid " + data("example2.json") + " --coalition 'p q' --grid 0.1");
  const Run second = run("fluid " + data("example2.json") + " --coalition 'p q' --grid 0.1");
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(run("fluid " + data("example2.json") + " --coalition ''").code == 2);
  CHECK(run("fluid " + data("example2.json") + " --coalition r").code == 2);
}

TEST_CASE("delay-tolerant network scenario") {
  const Run bundled = run("dtn " + data("dtn.json") + " --grid 0.5");
  CHECK(bundled.code == 0);
  CHECK(bundled.out.find("p takes 0.300 of free users; monopoly: yes (A-D), yes (chi)") != std::string::npos);
  CHECK(bundled.out.find("peers earn at least as much under chi: yes") != std::string::npos);

  const auto bad = scratch("crowded.json");
  write(bad, R"({"schema": "coalition-forge/1", "mode": "dtn", "lambda": 1,
    "providers": [{"name": "p", "g": 5, "g_max": 10, "x0": 0.7},
                  {"name": "q", "g": 10, "g_max": 20, "x0": 0.6}]})");
  CHECK(run("dtn " + bad.string()).code == 2);
}

TEST_CASE("axiom check") {
  cli::AxiomOptions o;
  o.file = data("example3.json");
  o.value = "chi";
  o.partition = "{p1 p2 | n1 | n2}";
  std::ostringstream out;
  CHECK(cli::run_check_axioms(o, out) == 0);
  CHECK(out.str().find("NP: fail") != std::string::npos);
  CHECK(out.str().find("GNP: pass") != std::string::npos);
}

TEST_CASE("canonical form round-trips") {
  for (const char* name : {"example1.json", "example2.json", "example3.json", "dtn.json"}) {
    CAPTURE(name);
    const Run once = run(std::string("canonical ") + data(name));
    REQUIRE(once.code == 0);
    const auto copy = scratch(name);
    write(copy, once.out);
    const Run twice = run("canonical " + copy.string());
    CHECK(twice.code == 0);
    CHECK(twice.out == once.out);
  }
}

TEST_CASE("exit codes") {
  CHECK(run("payoff /nonexistent/game.json").code == 2);
  CHECK(run("payoff " + data("example3.json") + " --value ad --partition '{p1 | p1 n1}'").code == 2);
  const auto broken = scratch("broken.json");
  write(broken, "{\"schema\": \"coalition-forge/1\", ");
  CHECK(run("payoff " + broken.string()).code == 2);

  std::string players;
  for (int i = 0; i < 22; ++i) players += (i ? ", " : "") + std::string("{\"name\": \"a") + std::to_string(i) + "\"}";
  const auto big = scratch("big.json");
  write(big, "{\"schema\": \"coalition-forge/1\", \"mode\": \"worth-table\", \"players\": [" + players +
                 "], \"worth\": {}}");
  CHECK(run("payoff " + big.string()).code == 3);
}
