#include "cforge/dtn.hpp"

#include <cmath>

#include "cforge/error.hpp"
#include "cforge/rational.hpp"

namespace cforge::dtn {

void DtnParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
  if (!(g > 0.0) || !std::isfinite(g)) throw InputError("the age budget g must be positive");
  if (!(g_max > 0.0) || !std::isfinite(g_max)) throw InputError("g_max must be positive");
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw InputError("x0 must lie in [0,1]");
}

double expected_age(double x, double mu, double lambda) {
  if (!(x > 0.0)) throw DomainError("expected age needs a positive assisting fraction");
  if (!(mu > 0.0)) throw DomainError("expected age needs a positive push rate");
  const double rate = x * lambda;
  return std::log1p(rate / mu) / rate;
}

double outage_probability(double x, double mu, double lambda, double g_max) {
  if (!(x > 0.0)) throw DomainError("outage probability needs a positive assisting fraction");
  if (!(mu > 0.0)) throw DomainError("outage probability needs a positive push rate");
  const double rate = x * lambda;
  return (rate + mu) / (rate + mu * std::exp((mu + rate) * g_max));
}

double optimal_push_rate(double x, double lambda, double g) {
  if (!(x > 0.0)) throw DomainError("the optimal push rate needs a positive assisting fraction");
  const double rate = x * lambda;
  return rate / std::expm1(rate * g);
}

double push_cost(double x, double lambda, double g) {
  if (x == 0.0) return 0.0;
  return x * x * lambda / std::expm1(x * lambda * g);
}

Curve cost_curve(const DtnParams& params) {
  params.validate();
  const double lambda = params.lambda;
  const double g = params.g;
  return Curve("x^2*" + format_double(lambda) + "/(exp(x*" + format_double(lambda * g) + ")-1)",
               [lambda, g](double x) { return push_cost(x, lambda, g); });
}

Curve scenario_curve(const DtnParams& params, double free) {
  params.validate();
  if (!(free > 0.0)) throw InputError("no free users left to compete for");
  const double lambda = params.lambda;
  const double g = params.g;
  const double x0 = params.x0;
  return Curve("push cost from x0 = " + format_double(x0),
               [=](double z) { return push_cost(x0 + free * z, lambda, g) / (lambda * free); });
}

double free_fraction(const DtnParams& p, const DtnParams& q) {
  p.validate();
  q.validate();
  const double free = 1.0 - p.x0 - q.x0;
  if (free < -1e-12) throw InputError("subscribed fractions exceed the population");
  if (free <= 1e-12) throw InputError("no free users left to compete for");
  return free;
}

FluidGame scenario_game(const DtnParams& p, const DtnParams& q, const QuadratureConfig& config) {
  const double free = free_fraction(p, q);
  return FluidGame({{"p", scenario_curve(p, free)}, {"q", scenario_curve(q, free)}}, config);
}

namespace {

ScenarioOutcome outcome_of(const FluidGame& game, double free, ValueKind kind) {
  ScenarioOutcome out;
  out.equilibrium = peer_split_equilibrium(game, 0, 1, kind, {1.0, 1.0});
  out.p_share = out.equilibrium.share * free;
  out.q_share = free - out.p_share;
  return out;
}

}  // namespace

ScenarioOutcome scenario(const DtnParams& p, const DtnParams& q, ValueKind kind,
                         const QuadratureConfig& config) {
  return outcome_of(scenario_game(p, q, config), free_fraction(p, q), kind);
}

ScenarioReport scenario_report(const DtnParams& p, const DtnParams& q,
                               const QuadratureConfig& config) {
  const FluidGame game = scenario_game(p, q, config);
  ScenarioReport report;
  report.free = free_fraction(p, q);
  report.ad = outcome_of(game, report.free, ValueKind::ad);
  report.chi = outcome_of(game, report.free, ValueKind::chi);
  report.chi_pays_peers_more =
      report.chi.equilibrium.peer_payoff >= report.ad.equilibrium.peer_payoff;
  return report;
}

}  // namespace cforge::dtn
