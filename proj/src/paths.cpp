#include "wpe/paths.hpp"

#include "wpe/errors.hpp"

namespace wpe {

std::vector<Path> enumerate_simple_paths(const WeightedGraph& g, NodeId a, NodeId b, std::size_t length) {
  if (!g.contains(a) || !g.contains(b)) throw DomainError("path endpoint not in graph");
  if (a == b) throw DomainError("path endpoints must differ");
  if (length < 1) throw DomainError("path length must be at least 1");

  std::vector<Path> out;
  Path current{{a}};
  std::vector<char> on_path(g.node_count(), 0);
  on_path[a] = 1;
  on_path[b] = 1;  // b may only appear as the final node

  auto extend = [&](auto&& self, std::size_t remaining) -> void {
    const NodeId tail = current.nodes.back();
    if (remaining == 1) {
      if (g.has_link(tail, b)) {
        current.nodes.push_back(b);
        out.push_back(current);
        current.nodes.pop_back();
      }
      return;
    }
    for (NodeId next : g.neighbors(tail)) {
      if (on_path[next]) continue;
      // Prune: with two links left, next must be adjacent to b.
      if (remaining == 2 && !g.has_link(next, b)) continue;
      on_path[next] = 1;
      current.nodes.push_back(next);
      self(self, remaining - 1);
      current.nodes.pop_back();
      on_path[next] = 0;
    }
  };
  extend(extend, length);
  return out;
}

double path_weight(const WeightedGraph& g, const Path& p) {
  if (p.nodes.size() < 2) throw DomainError("a path needs at least two nodes");
  // Summed from the smaller endpoint so that reversal gives identical bits.
  const auto& v = p.nodes;
  double total = 0.0;
  if (v.front() <= v.back()) {
    for (std::size_t t = 0; t + 1 < v.size(); ++t) total += g.link_weight(v[t], v[t + 1]);
  } else {
    for (std::size_t t = v.size() - 1; t > 0; --t) total += g.link_weight(v[t], v[t - 1]);
  }
  return total;
}

}  // namespace wpe
