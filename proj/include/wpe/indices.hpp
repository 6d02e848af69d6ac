#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpe/entropy.hpp"
#include "wpe/graph.hpp"

namespace wpe {

enum class IndexFamily { CN, AA, LP, WCN, WAA, WLP, PE, WPE };

enum class ScoreDirection { higher_is_likelier, lower_is_likelier };

IndexFamily parse_index_family(std::string_view name);
std::string_view to_string(IndexFamily family);

constexpr bool is_weighted(IndexFamily f) noexcept {
  return f == IndexFamily::WCN || f == IndexFamily::WAA || f == IndexFamily::WLP || f == IndexFamily::WPE;
}
constexpr bool is_entropy_family(IndexFamily f) noexcept {
  return f == IndexFamily::PE || f == IndexFamily::WPE;
}
/// Unweighted counterpart of a weighted family (identity otherwise).
IndexFamily unweighted_counterpart(IndexFamily f) noexcept;

/// Which index to compute and with which parameters. alpha is used by the
/// weighted families, path_limit (l) by PE/WPE, epsilon by LP/WLP.
struct IndexSpec {
  IndexFamily family = IndexFamily::WPE;
  double alpha = 0.0;
  int path_limit = 2;
  double epsilon = 0.01;

  /// PE and WPE rank small scores first.
  ScoreDirection direction() const noexcept {
    return is_entropy_family(family) ? ScoreDirection::lower_is_likelier
                                     : ScoreDirection::higher_is_likelier;
  }
  /// Longest path length the index looks at.
  int max_path_length() const noexcept;
  /// Throws ConfigError for non-finite alpha, l outside {2,3} or epsilon < 0.
  void validate() const;
  /// Display name such as "WPE(l=3)".
  std::string name() const;
};

/// Orients a score so that larger always means likelier.
constexpr double likelihood_key(double score, ScoreDirection d) noexcept {
  return d == ScoreDirection::higher_is_likelier ? score : -score;
}

/**
 * Scores of every node pair that is not linked in the scored graph.
 *
 * Pairs are kept in lexicographic order; several tables computed on the
 * same graph share one pair list.
 */
class ScoreTable {
 public:
  ScoreTable(IndexSpec spec, std::shared_ptr<const std::vector<NodePair>> pairs, std::vector<double> scores);

  const IndexSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return scores_.size(); }
  std::span<const NodePair> pairs() const noexcept { return *pairs_; }
  std::span<const double> scores() const noexcept { return scores_; }

  /// Position of the unordered pair {a, b}, if it is a candidate.
  std::optional<std::size_t> find(NodeId a, NodeId b) const;
  std::optional<double> score(NodeId a, NodeId b) const;
  /// Score of a candidate pair; DomainError otherwise.
  double at(NodeId a, NodeId b) const;

  /// Entry positions ordered likeliest first; ties broken by pair id.
  std::vector<std::size_t> ranking() const;
  /// First `count` positions of ranking(), computed without a full sort.
  std::vector<std::size_t> top(std::size_t count) const;

 private:
  IndexSpec spec_;
  std::shared_ptr<const std::vector<NodePair>> pairs_;
  std::vector<double> scores_;
};

/// CN, AA, WCN or WAA for one non-linked pair, straight from common neighbours.
double score_neighbor_index(const WeightedGraph& g, NodeId a, NodeId b, IndexFamily family, double alpha = 0.0);

/// LP or WLP for one non-linked pair, from enumerated length-2 and length-3 paths.
double score_path_count_index(const WeightedGraph& g, NodeId a, NodeId b, IndexFamily family,
                              double epsilon = 0.01, double alpha = 0.0);

/// PE or WPE for one non-linked pair:
///   S = I(a,b) - sum_{i=2..l} 1/(i-1) sum_{D in paths_i(a,b)} W_D^alpha I(D).
/// PE ignores alpha. +infinity when a or b has degree 0.
double score_entropy_index(const LinkEntropyContext& ctx, NodeId a, NodeId b, IndexFamily family,
                           int path_limit, double alpha = 0.0);
double score_entropy_index(const WeightedGraph& g, NodeId a, NodeId b, IndexFamily family, int path_limit,
                           double alpha = 0.0);

/// Dispatches one pair to the matching function above.
double score_pair(const WeightedGraph& g, NodeId a, NodeId b, const IndexSpec& spec);

/// Scores every non-linked pair of g.
ScoreTable score_all_pairs(const WeightedGraph& g, const IndexSpec& spec);

/// Same as score_all_pairs for each alpha in turn, sharing one path
/// enumeration. Element i uses spec with alpha = alphas[i].
std::vector<ScoreTable> score_all_pairs(const WeightedGraph& g, const IndexSpec& spec,
                                        std::span<const double> alphas);

}  // namespace wpe
