#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wpe/graph.hpp"

namespace wpe {

/// Simple path v_0 .. v_d; length() counts links.
struct Path {
  std::vector<NodeId> nodes;

  std::size_t length() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path& x, const Path& y) { return x.nodes <=> y.nodes; }
};

/// All simple paths from a to b with exactly `length` links, each reported
/// once starting at a, in lexicographic node order. Intermediate nodes never
/// include a or b. Throws DomainError if a == b, an endpoint is not in g, or
/// length < 1.
std::vector<Path> enumerate_simple_paths(const WeightedGraph& g, NodeId a, NodeId b, std::size_t length);

/// Sum of link weights along p. DomainError if a consecutive pair is not linked.
double path_weight(const WeightedGraph& g, const Path& p);

/**
 * Depth-first walk over every simple path that starts at `source` and has
 * 1..max_length links.
 *
 * For each path, `visit(nodes, entries)` receives the node sequence and the
 * adjacency-entry index (see WeightedGraph::adjacency_offset) of every link
 * on it, so callers can look up per-link tables without searching.
 */
template <class Visit>
void for_each_simple_path_from(const WeightedGraph& g, NodeId source, std::size_t max_length,
                               Visit&& visit) {
  if (max_length == 0) return;
  std::vector<NodeId> nodes{source};
  std::vector<std::size_t> entries;
  std::vector<char> on_path(g.node_count(), 0);
  on_path[source] = 1;

  auto extend = [&](auto&& self) -> void {
    const NodeId tail = nodes.back();
    const auto nbrs = g.neighbors(tail);
    const std::size_t base = g.adjacency_offset(tail);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeId next = nbrs[i];
      if (on_path[next]) continue;
      nodes.push_back(next);
      entries.push_back(base + i);
      visit(std::span<const NodeId>(nodes), std::span<const std::size_t>(entries));
      if (entries.size() < max_length) {
        on_path[next] = 1;
        self(self);
        on_path[next] = 0;
      }
      nodes.pop_back();
      entries.pop_back();
    }
  };
  extend(extend);
}

}  // namespace wpe
