#include "cforge/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "cforge/error.hpp"
#include "cforge/parallel.hpp"

namespace cforge {

std::vector<Partition> enumerate_partitions(PlayerSet ground, std::size_t max_players) {
  const std::vector<std::size_t> members = ground.members();
  const std::size_t n = members.size();
  if (n > max_players) {
    throw CapacityError("enumerating the partitions of " + std::to_string(n) + " players",
                        max_players);
  }
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back(std::vector<PlayerSet>{}, ground);
    return out;
  }
  // label[i] <= 1 + max(label[0..i-1]).
  std::vector<std::size_t> label(n, 0);
  std::vector<PlayerSet> blocks;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      blocks.assign(used, PlayerSet());
      for (std::size_t k = 0; k < n; ++k) blocks[label[k]] = blocks[label[k]].with(members[k]);
      out.emplace_back(blocks, ground);
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      label[i] = b;
      walk(i + 1, std::max(used, b + 1));
    }
  };
  walk(0, 0);
  return out;
}

std::string_view to_string(ResidualConvention convention) {
  return convention == ResidualConvention::keep_together ? "keep-together" : "scatter";
}

Partition successor(const Partition& partition, PlayerSet coalition, ResidualConvention convention) {
  if (coalition.empty()) throw StructuralError("the forming coalition must be nonempty");
  if (!coalition.is_subset_of(partition.ground())) {
    throw StructuralError("the forming coalition is not part of the structure");
  }
  if (partition.has_block(coalition)) return partition;
  std::vector<PlayerSet> blocks{coalition};
  for (PlayerSet block : partition.blocks()) {
    const PlayerSet rest = block - coalition;
    if (rest.empty()) continue;
    if (convention == ResidualConvention::keep_together || rest == block) {
      blocks.push_back(rest);
    } else {
      for (std::size_t i : rest.members()) blocks.push_back(PlayerSet::singleton(i));
    }
  }
  return Partition(std::move(blocks), partition.ground());
}

std::size_t TransitionGraph::index_of(const Partition& partition) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), partition, [](const Partition& a, const Partition& b) {
    return a < b;
  });
  if (it == nodes.end() || *it != partition) {
    throw InputError("partition is not a node of the transition graph");
  }
  return static_cast<std::size_t>(it - nodes.begin());
}

TransitionGraph build_graph(const WorthFunction& v, ValueKind kind, const WeightVector& weights,
                            ResidualConvention convention, const ShapleyOptions& options) {
  TransitionGraph graph;
  graph.nodes = enumerate_partitions(v.players());
  // Canonical order for lookups; the restricted-growth order differs from
  // the order on block masks.
  std::sort(graph.nodes.begin(), graph.nodes.end());
  const BlockPayoffTable table(v, kind, weights, options);

  std::vector<std::vector<TransitionEdge>> local(graph.nodes.size());
  parallel_for(graph.nodes.size(), [&](std::size_t i) {
    for (PlayerSet c : blocking_coalitions(table, graph.nodes[i])) {
      local[i].push_back({i, c, graph.index_of(successor(graph.nodes[i], c, convention))});
    }
  });
  graph.offsets.push_back(0);
  for (auto& edges : local) {
    graph.edges.insert(graph.edges.end(), edges.begin(), edges.end());
    graph.offsets.push_back(graph.edges.size());
  }
  return graph;
}

RecurrenceReport recurrence(const TransitionGraph& graph) {
  const std::size_t n = graph.nodes.size();
  // Iterative Tarjan.
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), component(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != SIZE_MAX) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, graph.offsets[root]}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [node, next] = frames.back();
      if (next < graph.offsets[node + 1]) {
        const std::size_t target = graph.edges[next++].target;
        if (index[target] == SIZE_MAX) {
          index[target] = low[target] = counter++;
          stack.push_back(target);
          on_stack[target] = true;
          frames.push_back({target, graph.offsets[target]});
        } else if (on_stack[target]) {
          low[node] = std::min(low[node], index[target]);
        }
        continue;
      }
      const std::size_t done = node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::size_t> members;
        while (true) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components.size();
          members.push_back(w);
          if (w == done) break;
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
      }
    }
  }

  std::vector<bool> terminal(components.size(), true);
  for (const TransitionEdge& e : graph.edges) {
    if (component[e.source] != component[e.target]) terminal[component[e.source]] = false;
  }
  RecurrenceReport report;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (terminal[c]) report.recurrent.push_back(components[c]);
  }
  std::sort(report.recurrent.begin(), report.recurrent.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.out_degree(i) == 0) report.stable.push_back(i);
    if (!terminal[component[i]]) report.transient.push_back(i);
  }
  return report;
}

Trajectory trajectory(const BlockPayoffTable& table, const Partition& start,
                      const TrajectoryOptions& options) {
  Trajectory out;
  std::mt19937_64 rng(options.seed);
  Partition current = start;
  for (std::size_t step = 0;; ++step) {
    const std::vector<PlayerSet> blocking = blocking_coalitions(table, current);
    if (blocking.empty()) {
      out.stabilized = true;
      break;
    }
    if (step == options.max_steps) break;
    PlayerSet chosen = blocking.front();
    if (options.policy == ChoicePolicy::random) {
      chosen = blocking[std::uniform_int_distribution<std::size_t>(0, blocking.size() - 1)(rng)];
    }
    out.steps.emplace_back(current, chosen);
    current = successor(current, chosen, options.convention);
  }
  out.final = std::move(current);
  return out;
}

Trajectory trajectory(const WorthFunction& v, ValueKind kind, const WeightVector& weights,
                      const Partition& start, const TrajectoryOptions& options) {
  require_partition_of(v, start);
  return trajectory(BlockPayoffTable(v, kind, weights), start, options);
}

std::string export_edges(const TransitionGraph& graph, const Universe& universe) {
  std::string out;
  for (const TransitionEdge& e : graph.edges) {
    out += graph.nodes[e.source].format(universe);
    out += " {" + universe.format(e.coalition) + "} ";
    out += graph.nodes[e.target].format(universe);
    out += '\n';
  }
  return out;
}

std::string export_dot(const TransitionGraph& graph, const Universe& universe) {
  std::string out = "digraph coalitions {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + graph.nodes[i].format(universe) + "\"";
    if (graph.out_degree(i) == 0) out += ", peripheries=2";
    out += "];\n";
  }
  for (const TransitionEdge& e : graph.edges) {
    out += "  n" + std::to_string(e.source) + " -> n" + std::to_string(e.target) + " [label=\"" +
           universe.format(e.coalition) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace cforge
