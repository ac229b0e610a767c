#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cforge/game.hpp"
#include "cforge/stability.hpp"
#include "cforge/values.hpp"

namespace cforge {

/// Every partition of `ground` in canonical order (restricted growth strings
/// in lexicographic order). CapacityError beyond `max_players`.
std::vector<Partition> enumerate_partitions(PlayerSet ground, std::size_t max_players = 12);

/// What happens to the rest of a block that loses members to a forming
/// coalition.
enum class ResidualConvention {
  keep_together,  // B \ C stays one coalition
  scatter,        // B \ C falls apart into singletons
};

std::string_view to_string(ResidualConvention convention);

/// The structure after C forms: C becomes a block and every old block B is
/// replaced by its residual B \ C (if nonempty) under `convention`.
Partition successor(const Partition& partition, PlayerSet coalition,
                    ResidualConvention convention = ResidualConvention::keep_together);

struct TransitionEdge {
  std::size_t source = 0;
  PlayerSet coalition;
  std::size_t target = 0;
};

struct TransitionGraph {
  std::vector<Partition> nodes;
  /// Sorted by source, then by coalition mask.
  std::vector<TransitionEdge> edges;
  /// edges[offsets[i] .. offsets[i + 1]) leave node i.
  std::vector<std::size_t> offsets;

  std::size_t out_degree(std::size_t node) const { return offsets[node + 1] - offsets[node]; }
  /// Throws InputError for partitions that are not nodes.
  std::size_t index_of(const Partition& partition) const;
};

TransitionGraph build_graph(const WorthFunction& v, ValueKind kind, const WeightVector& weights,
                            ResidualConvention convention = ResidualConvention::keep_together,
                            const ShapleyOptions& options = {});

/// Node indices grouped by long-run behaviour.
struct RecurrenceReport {
  std::vector<std::size_t> stable;
  /// Terminal strongly connected components, each sorted; stable nodes
  /// appear here as singleton classes.
  std::vector<std::vector<std::size_t>> recurrent;
  std::vector<std::size_t> transient;
};

RecurrenceReport recurrence(const TransitionGraph& graph);

enum class ChoicePolicy { first, random };

struct TrajectoryOptions {
  ChoicePolicy policy = ChoicePolicy::first;
  std::uint64_t seed = 0;
  std::size_t max_steps = 100;
  ResidualConvention convention = ResidualConvention::keep_together;
};

struct Trajectory {
  /// The structure before each move and the coalition that formed.
  std::vector<std::pair<Partition, PlayerSet>> steps;
  Partition final;
  bool stabilized = false;
};

Trajectory trajectory(const BlockPayoffTable& table, const Partition& start,
                      const TrajectoryOptions& options = {});

Trajectory trajectory(const WorthFunction& v, ValueKind kind, const WeightVector& weights,
                      const Partition& start, const TrajectoryOptions& options = {});

/// One line per edge: "{source} {coalition} {target}".
std::string export_edges(const TransitionGraph& graph, const Universe& universe);

/// Graphviz digraph; stable nodes are drawn with a double border.
std::string export_dot(const TransitionGraph& graph, const Universe& universe);

}  // namespace cforge
