#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wpe {

using NodeId = std::uint32_t;

/// Unordered node pair, stored with a < b.
struct NodePair {
  NodeId a = 0;
  NodeId b = 0;

  static constexpr NodePair of(NodeId x, NodeId y) noexcept {
    return x < y ? NodePair{x, y} : NodePair{y, x};
  }

  friend constexpr auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Undirected weighted link between dense node ids.
struct Link {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

/// One data record exactly as read from an input file.
struct RawRecord {
  std::string from;
  std::string to;
  double weight = 1.0;
  std::size_t line = 0;
};

/**
 * Undirected simple graph with strictly positive link weights.
 *
 * Adjacency is stored in CSR form with every neighbour list sorted by id, so
 * weight lookups are a binary search. Instances are immutable once built and
 * safe to share between threads.
 */
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Builds a graph on nodes 0..node_count-1. Each link must appear once, in
  /// either orientation. Throws DomainError on self-loops, parallel links,
  /// out-of-range endpoints or non-positive weights.
  static WeightedGraph from_links(std::size_t node_count, std::span<const Link> links,
                                  std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// Total link count M.
  std::size_t link_count() const noexcept { return neighbors_.size() / 2; }
  bool empty() const noexcept { return link_count() == 0; }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], degree(u)};
  }
  std::span<const double> weights(NodeId u) const {
    return {weights_.data() + offsets_[u], degree(u)};
  }
  /// Position of u's first adjacency entry; lets callers keep per-entry tables.
  std::size_t adjacency_offset(NodeId u) const { return offsets_[u]; }
  std::size_t adjacency_size() const noexcept { return neighbors_.size(); }

  bool contains(NodeId u) const noexcept { return u < node_count(); }
  bool has_link(NodeId u, NodeId v) const;
  std::optional<double> weight(NodeId u, NodeId v) const;
  /// Weight of an existing link; DomainError if u and v are not adjacent.
  double link_weight(NodeId u, NodeId v) const;

  /// All links with u < v in lexicographic order.
  std::vector<Link> links() const;

  const std::string& label(NodeId u) const { return labels_[u]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<double> weights_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

enum class MergeRule { sum, max };

struct PreprocessOptions {
  MergeRule merge = MergeRule::sum;
  bool drop_self_loops = true;
  bool keep_lcc = true;
};

/// Ignores direction, merges duplicate and antiparallel records, drops
/// self-loops and optionally keeps only the largest connected component.
/// Dense ids follow label order (integers numerically, then strings).
WeightedGraph preprocess(std::span<const RawRecord> records, const PreprocessOptions& options = {});

/// One record per link (u < v) carrying the original labels. Feeding the
/// result back into preprocess reproduces the graph.
std::vector<RawRecord> to_records(const WeightedGraph& g);

/// Topological summary. C is the mean local clustering coefficient with
/// C(v) = 0 for nodes of degree below two.
struct GraphStats {
  std::size_t node_count = 0;
  std::size_t link_count = 0;
  double mean_degree = 0.0;
  double degree_heterogeneity = 0.0;
  double clustering = 0.0;
};

GraphStats stats(const WeightedGraph& g);

double local_clustering(const WeightedGraph& g, NodeId v);

}  // namespace wpe
