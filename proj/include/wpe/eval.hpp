#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpe/graph.hpp"
#include "wpe/indices.hpp"

namespace wpe {

struct SplitSpec {
  double probe_fraction = 0.1;
  std::uint64_t seed = 0;
};

/// Random holdout of links. The training graph keeps every node, including
/// ones left without links.
struct EdgeSplit {
  WeightedGraph train;
  std::vector<Link> probe;  ///< sorted by (u, v), u < v

  std::vector<NodePair> probe_pairs() const;
};

/// Moves round(probe_fraction * |E|) links, drawn uniformly without
/// replacement, into the probe set. DomainError if g has fewer than 10 links
/// or either side would be empty.
EdgeSplit split_edges(const WeightedGraph& g, const SplitSpec& spec);

enum class AucMode { exact, sampled };

struct AucOptions {
  AucMode mode = AucMode::exact;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

/**
 * Probability that a probe pair outranks a nonexistent pair, ties counting
 * one half. Nonexistent pairs are the table entries outside the probe set.
 *
 * Exact mode counts every (probe, nonexistent) comparison through a sorted
 * pass; sampled mode draws `samples` random comparisons. Orientation follows
 * the table's ScoreDirection.
 */
double auc(const ScoreTable& scores, std::span<const NodePair> probe, const AucOptions& options = {});

/// Fraction of probe pairs among the `top_l` likeliest candidates. Ties are
/// broken by pair id. DomainError if top_l is 0 or exceeds the table size.
double precision_at(const ScoreTable& scores, std::span<const NodePair> probe, std::size_t top_l = 100);

enum class AucChoice { automatic, exact, sampled };

struct ExperimentOptions {
  std::size_t runs = 100;
  std::uint64_t base_seed = 0;
  double probe_fraction = 0.1;
  std::size_t top_l = 100;
  AucChoice auc = AucChoice::automatic;
  std::uint64_t auc_samples = 1'000'000;
  /// In automatic mode, exact AUC is used up to this many probe x nonexistent comparisons.
  double exact_auc_limit = 1e9;
  /// Worker threads; 0 means one per hardware thread.
  unsigned threads = 0;

  void validate() const;
};

struct RunRecord {
  std::uint64_t seed = 0;
  double auc = 0.0;
  double precision = 0.0;
  AucMode auc_mode = AucMode::exact;
};

struct ExperimentResult {
  std::string dataset;
  IndexSpec spec;
  std::vector<RunRecord> runs;
  double mean_auc = 0.0;
  double mean_precision = 0.0;
};

/// Run r splits with seed base_seed + r, scores the training graph and
/// records AUC and Precision@top_l. Runs execute in parallel; results are
/// independent of the thread count.
ExperimentResult run_experiment(const WeightedGraph& g, const IndexSpec& spec, const ExperimentOptions& options,
                                std::string dataset = {});

struct SweepResult {
  std::string dataset;
  IndexSpec spec;                        ///< alpha is ignored
  std::vector<ExperimentResult> points;  ///< one per grid value, in grid order
  double best_auc_alpha = 0.0;
  double best_precision_alpha = 0.0;
};

/// run_experiment for each alpha of the grid on identical splits. The best
/// alphas are the first grid values reaching the maximum mean.
SweepResult sweep_alpha(const WeightedGraph& g, const IndexSpec& spec, std::span<const double> grid,
                        const ExperimentOptions& options, std::string dataset = {});

/// min, min+step, ... up to max inclusive (with a tiny tolerance for rounding).
/// Values are rounded to 12 decimals so that 0.1 steps print cleanly.
std::vector<double> alpha_grid(double min, double max, double step);

}  // namespace wpe
