#include "wpe/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wpe/errors.hpp"

namespace wpe {

namespace {

void check_degrees(std::size_t M, std::size_t ka, std::size_t kb) {
  if (M < 1) throw DomainError("link count M must be at least 1");
  if (ka > M || kb > M)
    throw DomainError("degree exceeds link count (M=" + std::to_string(M) + ", ka=" + std::to_string(ka) +
                      ", kb=" + std::to_string(kb) + ")");
}

// log of C(M-ka, kb) / C(M, kb); requires 0 < ka, kb and ka + kb <= M.
double log_no_link_probability(std::size_t M, std::size_t ka, std::size_t kb) {
  const std::size_t steps = std::min(ka, kb);
  const double other = static_cast<double>(std::max(ka, kb));
  double sum = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) sum += std::log1p(-other / static_cast<double>(M - i + 1));
  return sum;
}

}  // namespace

double link_probability(std::size_t M, std::size_t ka, std::size_t kb) {
  check_degrees(M, ka, kb);
  if (ka == 0 || kb == 0) return 0.0;
  if (ka + kb > M) return 1.0;
  return -std::expm1(log_no_link_probability(M, ka, kb));
}

double link_entropy(std::size_t M, std::size_t ka, std::size_t kb) {
  check_degrees(M, ka, kb);
  if (ka == 0 || kb == 0) return kInfiniteEntropy;
  if (ka + kb > M) return 0.0;
  // -log2(1 - q) with q = exp(log q), kept in log1p form for q near 0.
  const double q = std::exp(log_no_link_probability(M, ka, kb));
  return -std::log1p(-q) / std::numbers::ln2;
}

LinkEntropyContext::LinkEntropyContext(const WeightedGraph& g) : graph_(&g) {
  if (g.empty()) throw DomainError("entropy context needs a graph with at least one link");
  entry_entropy_.resize(g.adjacency_size());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nbrs = g.neighbors(u);
    const std::size_t base = g.adjacency_offset(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) entry_entropy_[base + i] = pair_entropy(u, nbrs[i]);
  }
}

double LinkEntropyContext::pair_entropy(NodeId a, NodeId b) const {
  if (!graph_->contains(a) || !graph_->contains(b)) throw DomainError("node not in graph");
  std::size_t ka = graph_->degree(a), kb = graph_->degree(b);
  if (ka > kb) std::swap(ka, kb);
  const std::uint64_t key = (static_cast<std::uint64_t>(ka) << 32) | static_cast<std::uint64_t>(kb);
  const auto it = by_degrees_.find(key);
  if (it != by_degrees_.end()) return it->second;
  const double h = link_entropy(graph_->link_count(), ka, kb);
  by_degrees_.emplace(key, h);
  return h;
}

double LinkEntropyContext::path_entropy(const Path& path) const {
  if (path.nodes.size() < 2) throw DomainError("a path needs at least two nodes");
  std::vector<NodeId> seen(path.nodes);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw DomainError("path repeats a node");
  // Summed from the smaller endpoint so that reversal gives identical bits.
  const auto& v = path.nodes;
  double total = 0.0;
  if (v.front() <= v.back()) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) total += pair_entropy(v[i], v[i + 1]);
  } else {
    for (std::size_t i = v.size() - 1; i > 0; --i) total += pair_entropy(v[i], v[i - 1]);
  }
  return total;
}

}  // namespace wpe
