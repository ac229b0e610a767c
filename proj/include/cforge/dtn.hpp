#pragma once

#include <string>

#include "cforge/curve.hpp"
#include "cforge/fluid.hpp"

namespace cforge::dtn {

/// One provider in a delay-tolerant network where users meet at aggregate
/// rate lambda and the provider pushes fresh content at rate mu.
struct DtnParams {
  double lambda = 1.0;  // meeting rate
  double g = 1.0;       // age budget
  double g_max = 1.0;   // outage age threshold
  double x0 = 0.0;      // fraction of users already subscribed

  /// InputError unless lambda, g, g_max > 0 and x0 in [0,1].
  void validate() const;
};

/// Mean content age (1 / (x lambda)) ln((x lambda + mu) / mu).
double expected_age(double x, double mu, double lambda);

/// Probability that the content is older than g_max.
double outage_probability(double x, double mu, double lambda, double g_max);

/// Smallest push rate keeping the mean age at g: x lambda / (e^{x lambda g} - 1).
double optimal_push_rate(double x, double lambda, double g);

/// x * optimal_push_rate = x^2 lambda / (e^{x lambda g} - 1), with the limit
/// 0 at x = 0.
double push_cost(double x, double lambda, double g);

/// x -> push_cost(x, lambda, g).
Curve cost_curve(const DtnParams& params);

/// The provider's cost over the free users: z in [0,1] stands for the
/// fraction x0 + free * z of all users, and the cost is divided by
/// lambda * free so that peer payoffs stay per peer.
Curve scenario_curve(const DtnParams& params, double free);

struct ScenarioOutcome {
  SplitEquilibrium equilibrium;
  /// Fraction of all users that joins p beyond its subscribers.
  double p_share = 0.0;
  double q_share = 0.0;
};

struct ScenarioReport {
  double free = 0.0;
  ScenarioOutcome ad;
  ScenarioOutcome chi;
  /// Per-peer chi payoff at least the per-peer A-D payoff.
  bool chi_pays_peers_more = false;
};

/// Two providers competing for the users neither has subscribed yet.
ScenarioOutcome scenario(const DtnParams& p, const DtnParams& q, ValueKind kind,
                         const QuadratureConfig& config = {});

ScenarioReport scenario_report(const DtnParams& p, const DtnParams& q,
                               const QuadratureConfig& config = {});

/// Free fraction 1 - x0_p - x0_q; InputError when the subscribers exceed the
/// population or nobody is left.
double free_fraction(const DtnParams& p, const DtnParams& q);

FluidGame scenario_game(const DtnParams& p, const DtnParams& q,
                        const QuadratureConfig& config = {});

}  // namespace cforge::dtn
