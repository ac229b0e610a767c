#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cforge/curve.hpp"
#include "cforge/game.hpp"
#include "cforge/values.hpp"

namespace cforge {

struct QuadratureConfig {
  /// Absolute tolerance of each payoff, split evenly over its integrals.
  double tolerance = 1e-9;
  int max_depth = 48;
  /// Step of the finite difference for dM/dx.
  double fd_step = 1e-6;
  /// Step of the finite difference applied to whole payoff curves.
  double payoff_step = 1e-3;
  /// Samples of the grid scan that seeds every golden-section search.
  int grid_points = 201;

  /// InputError unless every field is positive.
  void validate() const;
};

/// Normalized provider costs in the large-population limit. Provider subsets
/// are PlayerSets over provider indices 0..count-1.
class FluidGame {
 public:
  FluidGame(std::vector<std::pair<std::string, Curve>> providers, QuadratureConfig config = {});

  std::size_t provider_count() const { return providers_.size(); }
  PlayerSet all() const { return PlayerSet::first(providers_.size()); }
  const std::string& name(std::size_t p) const { return providers_.at(p).first; }
  const Curve& cost(std::size_t p) const { return providers_.at(p).second; }
  std::size_t index_of(const std::string& name) const;
  const QuadratureConfig& config() const { return config_; }
  bool nonincreasing(std::size_t p) const { return nonincreasing_.at(p); }

  /// Providers whose cost rises somewhere on [0,1] or is constant.
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// M_Omega^S(x): least total cost of S when a peer fraction of at most x
  /// is split among its members. Supports |S| <= 3.
  double m_omega(PlayerSet s, double x) const;

 private:
  std::vector<std::pair<std::string, Curve>> providers_;
  QuadratureConfig config_;
  std::vector<bool> nonincreasing_;
  std::vector<std::string> warnings_;
};

/// Per-peer payoffs in a coalition of providers Zbar with peer mass x.
struct FluidPayoffs {
  std::map<std::size_t, double> provider;
  double peer = 0.0;
};

/// A-D payoffs of the coalition Zbar with assisting fraction x, from the
/// general multi-provider integral formula.
FluidPayoffs fluid_ad(const FluidGame& game, PlayerSet zbar, double x);

/// Closed single-provider specialization.
FluidPayoffs fluid_ad_single(const FluidGame& game, std::size_t p, double x);

/// Closed dual-provider specialization.
FluidPayoffs fluid_ad_dual(const FluidGame& game, std::size_t p, std::size_t q, double x);

/// Shapley payoffs of the grand coalition (every provider, x = 1).
FluidPayoffs fluid_shapley(const FluidGame& game);

/// Block surplus sum_j Omega_j(0) - M^Zbar(x) - (x phi_n + sum_j phi_j), with
/// phi the grand-coalition Shapley payoffs.
double fluid_surplus(const FluidGame& game, PlayerSet zbar, double x,
                     const FluidPayoffs& grand);

/// chi payoffs. `weights` holds one positive weight per provider; each peer
/// has weight 1. `grand` may carry a precomputed fluid_shapley(game).
FluidPayoffs fluid_chi(const FluidGame& game, PlayerSet zbar, double x,
                       const std::vector<double>& weights,
                       const std::optional<FluidPayoffs>& grand = std::nullopt);

FluidPayoffs fluid_payoffs(const FluidGame& game, PlayerSet zbar, double x, ValueKind kind,
                           const std::vector<double>& weights,
                           const std::optional<FluidPayoffs>& grand = std::nullopt);

/// Providers p with |M^Z(1) - M^{Z-p}(1) - Omega_p(0)| <= tolerance.
PlayerSet noncontributing_providers(const FluidGame& game, double tolerance = 1e-9);

/// phi_p^Z(1) - [Omega_p(0) - (M^Z(1) - M^{Z-p}(1))]. InputError unless the
/// game has at least two providers.
double core_violation_margin(const FluidGame& game, std::size_t p);

/// phi_n^Zbar(x) - phi_n^{Zbar-p}(x) - d/dx phi_p^Zbar(x).
double fair_identity_residual(const FluidGame& game, PlayerSet zbar, std::size_t p, double x);

enum class SplitOutcome { interior, monopoly_first, monopoly_second, indifferent };

std::string_view to_string(SplitOutcome outcome);

/// Where peers settle when a fraction s joins the first provider and 1 - s
/// the second. d(s) = first(s) - second(1 - s).
struct SplitEquilibrium {
  double share = 0.5;  // fraction of peers with the first provider
  SplitOutcome outcome = SplitOutcome::indifferent;
  /// Interior roots where d falls through zero: a peer drifting either way
  /// is pulled back.
  std::vector<double> stable_roots;
  /// Interior roots where d rises through zero (or only touches it).
  std::vector<double> unstable_roots;
  double peer_payoff = 0.0;
};

/// Stable candidates are the falling roots of d, s = 1 when d(1) > threshold
/// and s = 0 when d(0) < -threshold; the one paying peers most is selected,
/// an interior one on ties. Without candidates the outcome is indifferent.
SplitEquilibrium peer_split_equilibrium(const std::function<double(double)>& first,
                                        const std::function<double(double)>& second,
                                        int points = 201, double threshold = 1e-9);

/// Two-provider market: peer payoffs of the single-provider coalitions {p}
/// and {q} under the given value.
SplitEquilibrium peer_split_equilibrium(const FluidGame& game, std::size_t p, std::size_t q,
                                        ValueKind kind = ValueKind::ad,
                                        const std::vector<double>& weights = {});

/// Roots of f(x) - g(x) on [0,1].
std::vector<double> payoff_crossings(const std::function<double(double)>& f,
                                     const std::function<double(double)>& g,
                                     int points = 201, double threshold = 1e-9);

}  // namespace cforge
