#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "wpe/graph.hpp"
#include "wpe/paths.hpp"

namespace wpe {

/// Entropy of an impossible event.
inline constexpr double kInfiniteEntropy = std::numeric_limits<double>::infinity();

/**
 * Probability that two nodes with ka and kb link stubs are connected when
 * kb links are drawn without replacement from M, none of which may belong
 * to the ka links of the other node:
 *
 *   P = 1 - prod_{i=1..kb} (M - ka - i + 1) / (M - i + 1) = 1 - C(M-ka, kb) / C(M, kb)
 *
 * The product is evaluated as a sum of log1p terms over min(ka, kb) factors,
 * which keeps the result symmetric and stable for M in the tens of
 * thousands. Throws DomainError unless M >= 1 and ka, kb <= M.
 */
double link_probability(std::size_t M, std::size_t ka, std::size_t kb);

/// -log2(link_probability): 0 for a certain link, kInfiniteEntropy when ka
/// or kb is zero.
double link_entropy(std::size_t M, std::size_t ka, std::size_t kb);

/**
 * Degree-based entropies evaluated on one graph.
 *
 * Link entropies of existing links are tabulated per adjacency entry on
 * construction; entropies for arbitrary node pairs are memoised by degree
 * pair. Not thread-safe for pair queries; use one context per worker.
 */
class LinkEntropyContext {
 public:
  explicit LinkEntropyContext(const WeightedGraph& g);

  const WeightedGraph& graph() const noexcept { return *graph_; }
  std::size_t link_count() const noexcept { return graph_->link_count(); }

  /// Entropy of a link between a and b, whether or not they are adjacent.
  double pair_entropy(NodeId a, NodeId b) const;
  /// Entropy of the link stored at an adjacency entry.
  double entry_entropy(std::size_t entry) const { return entry_entropy_[entry]; }
  std::span<const double> entry_entropies() const noexcept { return entry_entropy_; }

  /// Sum of link entropies along a path of at least two distinct nodes.
  /// DomainError for missing nodes, repeated nodes or too-short paths.
  double path_entropy(const Path& path) const;

 private:
  const WeightedGraph* graph_;
  std::vector<double> entry_entropy_;
  mutable std::unordered_map<std::uint64_t, double> by_degrees_;
};

}  // namespace wpe
