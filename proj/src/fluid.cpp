#include "cforge/fluid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include "cforge/error.hpp"
#include "cforge/numeric.hpp"

namespace cforge {
namespace {

constexpr std::size_t kMaxMinimizedProviders = 3;
// Regime switches of M can hide between the samples of a single Simpson
// panel; every payoff integral starts from this many.
constexpr int kInitialPanels = 16;

// Per-call evaluation context: memoizes M_Omega, which the quadratures of one
// payoff evaluate at many shared abscissas.
class Evaluator {
 public:
  explicit Evaluator(const FluidGame& game) : game_(game), cfg_(game.config()) {}

  double m(PlayerSet s, double x) {
    if (s.empty()) return 0.0;
    if (x < 0.0) x = 0.0;
    if (x > 1.0) x = 1.0;
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    const Key key{s.mask(), bits};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double value = compute_m(s, x);
    cache_.emplace(key, value);
    return value;
  }

  // Nested minimizations sample arbitrary abscissas; caching them only
  // grows the table.
  double m_uncached(PlayerSet s, double x) {
    if (s.empty()) return 0.0;
    return compute_m(s, std::clamp(x, 0.0, 1.0));
  }

  double dm(PlayerSet s, double x) {
    return derivative([&](double t) { return m(s, t); }, x, cfg_.fd_step);
  }

  double integrate(const numeric::Function& f, double tolerance) {
    return numeric::adaptive_simpson(f, 0.0, 1.0, tolerance, cfg_.max_depth, kInitialPanels).value;
  }

  // phi_p^Zbar(x) from the general formula.
  double provider_ad(PlayerSet zbar, std::size_t p, double x) {
    const int z = static_cast<int>(zbar.size());
    const double tol = term_tolerance(zbar);
    double total = 0.0;
    for_each_subset(zbar.without(p), [&](PlayerSet s) {
      const int k = static_cast<int>(s.size());
      const PlayerSet with_p = s.with(p);
      total += integrate(
          [&](double u) {
            return std::pow(u, k) * std::pow(1.0 - u, z - 1 - k) * (m(with_p, u * x) - m(s, u * x));
          },
          tol);
    });
    return game_.cost(p)(0.0) - total;
  }

  // phi_n^Zbar(x) from the general formula.
  double peer_ad(PlayerSet zbar, double x) {
    const int z = static_cast<int>(zbar.size());
    const double tol = term_tolerance(zbar);
    double total = 0.0;
    for_each_subset(zbar, [&](PlayerSet s) {
      if (s.empty()) return;
      const int k = static_cast<int>(s.size());
      total += integrate(
          [&](double u) { return std::pow(u, k) * std::pow(1.0 - u, z - k) * dm(s, u * x); }, tol);
    });
    return -total;
  }

  double term_tolerance(PlayerSet zbar) const {
    return cfg_.tolerance / static_cast<double>(std::size_t{1} << zbar.size());
  }

 private:
  struct Key {
    std::uint64_t mask;
    std::uint64_t bits;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>()(k.bits * 0x9E3779B97F4A7C15ULL ^ k.mask);
    }
  };

  double minimize(const numeric::Function& f, double x) {
    if (x <= 0.0) return f(0.0);
    return numeric::grid_golden_minimize(f, 0.0, x, cfg_.grid_points, 1e-12).value;
  }

  double compute_m(PlayerSet s, double x) {
    const std::size_t first = s.lowest();
    const Curve& cost = game_.cost(first);
    if (s.size() == 1) {
      if (game_.nonincreasing(first)) return checked(cost(x));
      return minimize([&](double y) { return checked(cost(y)); }, x);
    }
    const PlayerSet rest = s.without(first);
    const PlayerSet alone = PlayerSet::singleton(first);
    return minimize([&](double y) { return m_uncached(alone, y) + m_uncached(rest, x - y); }, x);
  }

  static double checked(double value) {
    if (!std::isfinite(value)) throw DomainError("cost curve evaluated to a non-finite value");
    return value;
  }

  const FluidGame& game_;
  const QuadratureConfig& cfg_;
  std::unordered_map<Key, double, KeyHash> cache_;
};

void require_subset(const FluidGame& game, PlayerSet zbar) {
  if (!zbar.is_subset_of(game.all())) throw InputError("provider set outside the game");
}

void require_member(const FluidGame& game, std::size_t p) {
  if (p >= game.provider_count()) throw InputError("unknown provider index " + std::to_string(p));
}

void require_fraction(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("peer fraction must lie in [0,1]");
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(tolerance > 0.0)) throw InputError("quadrature tolerance must be positive");
  if (max_depth <= 0) throw InputError("quadrature depth must be positive");
  if (!(fd_step > 0.0) || !(payoff_step > 0.0)) throw InputError("difference steps must be positive");
  if (grid_points < 3) throw InputError("grid needs at least 3 points");
}

FluidGame::FluidGame(std::vector<std::pair<std::string, Curve>> providers, QuadratureConfig config)
    : providers_(std::move(providers)), config_(config) {
  config_.validate();
  if (providers_.empty()) throw InputError("a fluid game needs at least one provider");
  if (providers_.size() > PlayerSet::kMaxPlayers) throw CapacityError("too many providers", 64);
  for (std::size_t p = 0; p < providers_.size(); ++p) {
    const auto& [name, curve] = providers_[p];
    for (std::size_t q = 0; q < p; ++q) {
      if (providers_[q].first == name) throw InputError("duplicate provider '" + name + "'");
    }
    double lo = INFINITY;
    double hi = -INFINITY;
    for (int k = 0; k <= 1000; ++k) {
      const double x = k / 1000.0;
      double value;
      try {
        value = curve(x);
      } catch (const DomainError& e) {
        throw InputError("cost of " + name + " is undefined at x = " + format_double(x) + ": " +
                         e.what());
      }
      if (!std::isfinite(value) || value < 0.0) {
        throw InputError("cost of " + name + " must be finite and nonnegative on [0,1], got " +
                         format_double(value) + " at x = " + format_double(x));
      }
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    const bool monotone = nonincreasing_on_grid(curve);
    nonincreasing_.push_back(monotone);
    if (!monotone) warnings_.push_back("cost of " + name + " increases somewhere on [0,1]");
    if (hi == lo) warnings_.push_back("cost of " + name + " is constant on [0,1]");
  }
}

std::size_t FluidGame::index_of(const std::string& name) const {
  for (std::size_t p = 0; p < providers_.size(); ++p) {
    if (providers_[p].first == name) return p;
  }
  throw InputError("unknown provider '" + name + "'");
}

double FluidGame::m_omega(PlayerSet s, double x) const {
  require_subset(*this, s);
  require_fraction(x);
  if (s.size() > kMaxMinimizedProviders) {
    throw CapacityError("cost minimization over " + std::to_string(s.size()) + " providers",
                        kMaxMinimizedProviders);
  }
  return Evaluator(*this).m(s, x);
}

FluidPayoffs fluid_ad(const FluidGame& game, PlayerSet zbar, double x) {
  require_subset(game, zbar);
  require_fraction(x);
  if (zbar.size() > kMaxMinimizedProviders) {
    throw CapacityError("fluid payoffs for " + std::to_string(zbar.size()) + " providers",
                        kMaxMinimizedProviders);
  }
  FluidPayoffs out;
  if (zbar.empty()) return out;
  Evaluator eval(game);
  for (std::size_t p : zbar.members()) out.provider[p] = eval.provider_ad(zbar, p, x);
  out.peer = eval.peer_ad(zbar, x);
  return out;
}

FluidPayoffs fluid_ad_single(const FluidGame& game, std::size_t p, double x) {
  require_member(game, p);
  require_fraction(x);
  Evaluator eval(game);
  const PlayerSet s = PlayerSet::singleton(p);
  const double tol = eval.term_tolerance(s);
  FluidPayoffs out;
  out.provider[p] = game.cost(p)(0.0) - eval.integrate([&](double u) { return eval.m(s, u * x); }, tol);
  out.peer = -eval.integrate([&](double u) { return u * eval.dm(s, u * x); }, tol);
  return out;
}

FluidPayoffs fluid_ad_dual(const FluidGame& game, std::size_t p, std::size_t q, double x) {
  require_member(game, p);
  require_member(game, q);
  require_fraction(x);
  if (p == q) throw InputError("dual-provider payoffs need two distinct providers");
  Evaluator eval(game);
  const PlayerSet sp = PlayerSet::singleton(p);
  const PlayerSet sq = PlayerSet::singleton(q);
  const PlayerSet both = sp | sq;
  const double tol = eval.term_tolerance(both);
  auto provider = [&](std::size_t self, PlayerSet mine, PlayerSet other) {
    return game.cost(self)(0.0) -
           eval.integrate([&](double u) { return u * eval.m(both, u * x); }, tol) -
           eval.integrate([&](double u) { return (1.0 - u) * eval.m(mine, u * x); }, tol) +
           eval.integrate([&](double u) { return u * eval.m(other, u * x); }, tol);
  };
  FluidPayoffs out;
  out.provider[p] = provider(p, sp, sq);
  out.provider[q] = provider(q, sq, sp);
  out.peer = -eval.integrate([&](double u) { return u * u * eval.dm(both, u * x); }, tol);
  for (PlayerSet s : {sp, sq}) {
    out.peer -= eval.integrate([&](double u) { return u * (1.0 - u) * eval.dm(s, u * x); }, tol);
  }
  return out;
}

FluidPayoffs fluid_shapley(const FluidGame& game) { return fluid_ad(game, game.all(), 1.0); }

double fluid_surplus(const FluidGame& game, PlayerSet zbar, double x, const FluidPayoffs& grand) {
  require_subset(game, zbar);
  require_fraction(x);
  double surplus = -game.m_omega(zbar, x) - x * grand.peer;
  for (std::size_t j : zbar.members()) surplus += game.cost(j)(0.0) - grand.provider.at(j);
  return surplus;
}

FluidPayoffs fluid_chi(const FluidGame& game, PlayerSet zbar, double x,
                       const std::vector<double>& weights,
                       const std::optional<FluidPayoffs>& grand) {
  require_subset(game, zbar);
  require_fraction(x);
  if (zbar.empty()) throw InputError("a chi coalition needs at least one provider");
  if (weights.size() != game.provider_count()) {
    throw InputError("expected one weight per provider");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("provider weights must be positive");
  }
  const FluidPayoffs g = grand ? *grand : fluid_shapley(game);
  const double surplus = fluid_surplus(game, zbar, x, g);
  double total_weight = x;
  for (std::size_t j : zbar.members()) total_weight += weights[j];
  FluidPayoffs out;
  for (std::size_t j : zbar.members()) {
    out.provider[j] = g.provider.at(j) + weights[j] / total_weight * surplus;
  }
  out.peer = g.peer + surplus / total_weight;
  return out;
}

FluidPayoffs fluid_payoffs(const FluidGame& game, PlayerSet zbar, double x, ValueKind kind,
                           const std::vector<double>& weights,
                           const std::optional<FluidPayoffs>& grand) {
  if (kind == ValueKind::ad) return fluid_ad(game, zbar, x);
  return fluid_chi(game, zbar, x, weights, grand);
}

PlayerSet noncontributing_providers(const FluidGame& game, double tolerance) {
  const PlayerSet all = game.all();
  const double whole = game.m_omega(all, 1.0);
  PlayerSet out;
  for (std::size_t p : all.members()) {
    const double marginal = whole - game.m_omega(all.without(p), 1.0) - game.cost(p)(0.0);
    if (std::fabs(marginal) <= tolerance) out = out.with(p);
  }
  return out;
}

double core_violation_margin(const FluidGame& game, std::size_t p) {
  require_member(game, p);
  if (game.provider_count() < 2) {
    throw InputError("the core-violation margin needs at least two providers");
  }
  const PlayerSet all = game.all();
  Evaluator eval(game);
  const double phi = eval.provider_ad(all, p, 1.0);
  return phi - (game.cost(p)(0.0) - (eval.m(all, 1.0) - eval.m(all.without(p), 1.0)));
}

double fair_identity_residual(const FluidGame& game, PlayerSet zbar, std::size_t p, double x) {
  require_subset(game, zbar);
  require_fraction(x);
  if (!zbar.contains(p)) throw InputError("the provider must belong to the coalition");
  Evaluator eval(game);
  const double peer = eval.peer_ad(zbar, x);
  const double peer_without = zbar.size() == 1 ? 0.0 : eval.peer_ad(zbar.without(p), x);
  const double slope = derivative([&](double t) { return eval.provider_ad(zbar, p, t); }, x,
                                  game.config().payoff_step);
  return peer - peer_without - slope;
}

std::string_view to_string(SplitOutcome outcome) {
  switch (outcome) {
    case SplitOutcome::interior: return "interior";
    case SplitOutcome::monopoly_first: return "monopoly-first";
    case SplitOutcome::monopoly_second: return "monopoly-second";
    default: return "indifferent";
  }
}

SplitEquilibrium peer_split_equilibrium(const std::function<double(double)>& first,
                                        const std::function<double(double)>& second, int points,
                                        double threshold) {
  auto d = [&](double s) { return first(s) - second(1.0 - s); };
  SplitEquilibrium eq;
  struct Candidate {
    double share;
    double payoff;
    SplitOutcome outcome;
  };
  std::vector<Candidate> candidates;
  for (const numeric::Root& root : numeric::bracket_roots(d, 0.0, 1.0, points, threshold)) {
    if (root.x <= 0.0 || root.x >= 1.0) continue;
    if (root.direction < 0) {
      eq.stable_roots.push_back(root.x);
      candidates.push_back({root.x, first(root.x), SplitOutcome::interior});
    } else {
      eq.unstable_roots.push_back(root.x);
    }
  }
  const double at_one = first(1.0);
  const double at_zero = second(1.0);
  if (at_one - second(0.0) > threshold) candidates.push_back({1.0, at_one, SplitOutcome::monopoly_first});
  if (first(0.0) - at_zero < -threshold) candidates.push_back({0.0, at_zero, SplitOutcome::monopoly_second});
  if (candidates.empty()) return eq;

  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    const bool better = c.payoff > best->payoff + threshold;
    const bool tie_to_interior = std::fabs(c.payoff - best->payoff) <= threshold &&
                                 c.outcome == SplitOutcome::interior &&
                                 best->outcome != SplitOutcome::interior;
    if (better || tie_to_interior) best = &c;
  }
  eq.share = best->share;
  eq.outcome = best->outcome;
  eq.peer_payoff = best->payoff;
  return eq;
}

SplitEquilibrium peer_split_equilibrium(const FluidGame& game, std::size_t p, std::size_t q,
                                        ValueKind kind, const std::vector<double>& weights) {
  require_member(game, p);
  require_member(game, q);
  if (p == q) throw InputError("the split equilibrium needs two distinct providers");
  std::optional<FluidPayoffs> grand;
  std::vector<double> w = weights.empty() ? std::vector<double>(game.provider_count(), 1.0) : weights;
  if (kind == ValueKind::chi) grand = fluid_shapley(game);
  auto peer = [&](std::size_t provider) {
    return [&, provider](double x) {
      return fluid_payoffs(game, PlayerSet::singleton(provider), x, kind, w, grand).peer;
    };
  };
  return peer_split_equilibrium(peer(p), peer(q));
}

std::vector<double> payoff_crossings(const std::function<double(double)>& f,
                                     const std::function<double(double)>& g, int points,
                                     double threshold) {
  std::vector<double> out;
  for (const numeric::Root& root :
       numeric::bracket_roots([&](double x) { return f(x) - g(x); }, 0.0, 1.0, points, threshold)) {
    out.push_back(root.x);
  }
  return out;
}

}  // namespace cforge
