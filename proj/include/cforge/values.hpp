#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "cforge/game.hpp"

namespace cforge {

struct ShapleyOptions {
  /// Exact Shapley costs Theta(2^n * n) rational operations; larger
  /// coalitions are rejected with a CapacityError.
  std::size_t max_players = 20;
};

/// Shapley value of the unpartitioned game (N, v).
PayoffVector shapley(const WorthFunction& v, const ShapleyOptions& options = {});

/// Shapley value of the reduced game (C, v restricted to C). Players outside
/// `coalition` receive 0.
PayoffVector shapley_on(const WorthFunction& v, PlayerSet coalition,
                        const ShapleyOptions& options = {});

/// Aumann-Dreze value: the Shapley value of each block's reduced game.
PayoffVector ad_value(const WorthFunction& v, const Partition& partition,
                      const ShapleyOptions& options = {});

/// chi value: Shapley payoff of the whole game plus a weight-proportional
/// share of the block's surplus v(C) - phi_C.
PayoffVector chi_value(const WorthFunction& v, const Partition& partition,
                       const WeightVector& weights, const ShapleyOptions& options = {});

/// The chi correction applied to an already computed Shapley vector.
PayoffVector chi_from_shapley(const WorthFunction& v, const Partition& partition,
                              const WeightVector& weights, const PayoffVector& shapley_payoff);

enum class ValueKind { ad, chi };

std::string_view to_string(ValueKind kind);
/// Accepts "ad", "a-d", "chi". Throws InputError otherwise.
ValueKind parse_value_kind(std::string_view text);

/// A partition value phi(N, v, P).
using ValueFunction = std::function<PayoffVector(const WorthFunction&, const Partition&)>;

ValueFunction ad_value_function(ShapleyOptions options = {});
ValueFunction chi_value_function(WeightVector weights, ShapleyOptions options = {});
ValueFunction value_function(ValueKind kind, const WeightVector& weights,
                             ShapleyOptions options = {});

/// Throws StructuralError unless `partition` covers exactly the players of `v`.
void require_partition_of(const WorthFunction& v, const Partition& partition);

}  // namespace cforge
