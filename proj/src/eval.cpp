#include "wpe/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "wpe/errors.hpp"
#include "wpe/random.hpp"

namespace wpe {

std::vector<NodePair> EdgeSplit::probe_pairs() const {
  std::vector<NodePair> out;
  out.reserve(probe.size());
  for (const Link& l : probe) out.push_back(NodePair::of(l.u, l.v));
  return out;
}

EdgeSplit split_edges(const WeightedGraph& g, const SplitSpec& spec) {
  if (!(spec.probe_fraction > 0.0 && spec.probe_fraction < 1.0))
    throw DomainError("probe fraction must lie in (0, 1)");
  if (g.link_count() < 10) throw DomainError("splitting needs at least 10 links");
  std::vector<Link> links = g.links();
  const auto probe_count =
      static_cast<std::size_t>(std::llround(spec.probe_fraction * static_cast<double>(links.size())));
  if (probe_count == 0) throw DomainError("probe fraction leaves the probe set empty");
  if (probe_count >= links.size()) throw DomainError("probe fraction leaves the training set empty");

  // Partial Fisher-Yates over the canonical link order.
  Rng rng(spec.seed);
  for (std::size_t i = 0; i < probe_count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(links.size() - i));
    std::swap(links[i], links[j]);
  }
  EdgeSplit split;
  split.probe.assign(links.begin(), links.begin() + static_cast<std::ptrdiff_t>(probe_count));
  std::sort(split.probe.begin(), split.probe.end(),
            [](const Link& x, const Link& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  const std::span<const Link> rest(links.data() + probe_count, links.size() - probe_count);
  split.train = WeightedGraph::from_links(g.node_count(), rest, g.labels());
  return split;
}

namespace {

// Likelihood keys of probe and nonexistent entries.
void partition_keys(const ScoreTable& scores, std::span<const NodePair> probe, std::vector<double>& positives,
                    std::vector<double>& negatives) {
  std::vector<char> is_probe(scores.size(), 0);
  for (const NodePair& p : probe) {
    const auto pos = scores.find(p.a, p.b);
    if (!pos) throw DomainError("probe pair missing from score table");
    is_probe[*pos] = 1;
  }
  const ScoreDirection d = scores.spec().direction();
  const auto s = scores.scores();
  positives.clear();
  negatives.clear();
  for (std::size_t i = 0; i < s.size(); ++i)
    (is_probe[i] ? positives : negatives).push_back(likelihood_key(s[i], d));
  if (positives.empty()) throw DomainError("AUC needs at least one probe pair");
  if (negatives.empty()) throw DomainError("AUC needs at least one nonexistent pair");
}

}  // namespace

double auc(const ScoreTable& scores, std::span<const NodePair> probe, const AucOptions& options) {
  std::vector<double> positives, negatives;
  partition_keys(scores, probe, positives, negatives);

  if (options.mode == AucMode::sampled) {
    if (options.samples == 0) throw DomainError("sampled AUC needs at least one sample");
    Rng rng(options.seed);
    std::uint64_t twice_credit = 0;
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      const double p = positives[rng.below(positives.size())];
      const double q = negatives[rng.below(negatives.size())];
      twice_credit += p > q ? 2 : (p == q ? 1 : 0);
    }
    return static_cast<double>(twice_credit) / (2.0 * static_cast<double>(options.samples));
  }

  // Each probe key earns the number of smaller nonexistent keys plus half the equal ones.
  std::sort(negatives.begin(), negatives.end());
  std::uint64_t twice_credit = 0;
  for (double p : positives) {
    const auto [lo, hi] = std::equal_range(negatives.begin(), negatives.end(), p);
    twice_credit += 2 * static_cast<std::uint64_t>(lo - negatives.begin()) + static_cast<std::uint64_t>(hi - lo);
  }
  return static_cast<double>(twice_credit) /
         (2.0 * static_cast<double>(positives.size()) * static_cast<double>(negatives.size()));
}

double precision_at(const ScoreTable& scores, std::span<const NodePair> probe, std::size_t top_l) {
  if (top_l == 0) throw DomainError("precision needs L >= 1");
  if (scores.size() < top_l)
    throw DomainError("score table has " + std::to_string(scores.size()) + " candidates, fewer than L = " +
                      std::to_string(top_l));
  std::vector<NodePair> sorted(probe.begin(), probe.end());
  std::sort(sorted.begin(), sorted.end());
  const auto pairs = scores.pairs();
  std::size_t hits = 0;
  for (std::size_t pos : scores.top(top_l))
    if (std::binary_search(sorted.begin(), sorted.end(), pairs[pos])) ++hits;
  return static_cast<double>(hits) / static_cast<double>(top_l);
}

void ExperimentOptions::validate() const {
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (!(probe_fraction > 0.0 && probe_fraction < 1.0)) throw ConfigError("probe fraction must lie in (0, 1)");
  if (top_l < 1) throw ConfigError("top-L must be at least 1");
  if (auc_samples < 1) throw ConfigError("AUC sample count must be at least 1");
}

namespace {

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

// Runs job(i) for i in [0, count) on a small pool; rethrows the first failure.
template <class Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
  const unsigned workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

RunRecord evaluate_run(const ScoreTable& table, std::span<const NodePair> probe, std::uint64_t seed,
                       const ExperimentOptions& options) {
  RunRecord record;
  record.seed = seed;
  const double comparisons = static_cast<double>(probe.size()) * static_cast<double>(table.size() - probe.size());
  AucOptions auc_options;
  auc_options.samples = options.auc_samples;
  auc_options.seed = mix_seed(seed);
  switch (options.auc) {
    case AucChoice::exact: auc_options.mode = AucMode::exact; break;
    case AucChoice::sampled: auc_options.mode = AucMode::sampled; break;
    case AucChoice::automatic:
      auc_options.mode = comparisons <= options.exact_auc_limit ? AucMode::exact : AucMode::sampled;
      break;
  }
  record.auc_mode = auc_options.mode;
  record.auc = auc(table, probe, auc_options);
  record.precision = precision_at(table, probe, options.top_l);
  return record;
}

void summarize(ExperimentResult& result) {
  double auc_sum = 0.0, precision_sum = 0.0;
  for (const RunRecord& r : result.runs) {
    auc_sum += r.auc;
    precision_sum += r.precision;
  }
  const auto n = static_cast<double>(result.runs.size());
  result.mean_auc = auc_sum / n;
  result.mean_precision = precision_sum / n;
}

// Keeps the score tables of one alpha chunk under ~16M doubles per worker.
std::size_t alpha_chunk(std::size_t table_size, std::size_t alphas) {
  constexpr std::size_t budget = std::size_t{1} << 24;
  return std::clamp<std::size_t>(budget / std::max<std::size_t>(table_size, 1), 1, std::max<std::size_t>(alphas, 1));
}

}  // namespace

SweepResult sweep_alpha(const WeightedGraph& g, const IndexSpec& spec, std::span<const double> grid,
                        const ExperimentOptions& options, std::string dataset) {
  options.validate();
  spec.validate();
  if (grid.empty()) throw ConfigError("alpha grid is empty");

  // records[run][alpha]
  std::vector<std::vector<RunRecord>> records(options.runs, std::vector<RunRecord>(grid.size()));
  parallel_for(options.runs, options.threads, [&](std::size_t r) {
    const std::uint64_t seed = options.base_seed + r;
    const EdgeSplit split = split_edges(g, {options.probe_fraction, seed});
    const auto probe = split.probe_pairs();
    const std::size_t table_size =
        split.train.node_count() * (split.train.node_count() - 1) / 2 - split.train.link_count();
    const std::size_t chunk = alpha_chunk(table_size, grid.size());
    for (std::size_t first = 0; first < grid.size(); first += chunk) {
      const auto alphas = grid.subspan(first, std::min(chunk, grid.size() - first));
      const auto tables = score_all_pairs(split.train, spec, alphas);
      for (std::size_t k = 0; k < tables.size(); ++k)
        records[r][first + k] = evaluate_run(tables[k], probe, seed, options);
    }
  });

  SweepResult sweep;
  sweep.dataset = dataset;
  sweep.spec = spec;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ExperimentResult point;
    point.dataset = dataset;
    point.spec = spec;
    point.spec.alpha = grid[k];
    for (std::size_t r = 0; r < options.runs; ++r) point.runs.push_back(records[r][k]);
    summarize(point);
    sweep.points.push_back(std::move(point));
  }
  auto best = [&](auto metric) {
    std::size_t arg = 0;
    for (std::size_t k = 1; k < sweep.points.size(); ++k)
      if (metric(sweep.points[k]) > metric(sweep.points[arg])) arg = k;
    return grid[arg];
  };
  sweep.best_auc_alpha = best([](const ExperimentResult& e) { return e.mean_auc; });
  sweep.best_precision_alpha = best([](const ExperimentResult& e) { return e.mean_precision; });
  return sweep;
}

ExperimentResult run_experiment(const WeightedGraph& g, const IndexSpec& spec, const ExperimentOptions& options,
                                std::string dataset) {
  const double alpha[] = {spec.alpha};
  SweepResult single = sweep_alpha(g, spec, alpha, options, std::move(dataset));
  return std::move(single.points.front());
}

std::vector<double> alpha_grid(double min, double max, double step) {
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step))
    throw ConfigError("alpha grid bounds must be finite");
  if (step <= 0.0) throw ConfigError("alpha step must be positive");
  if (max < min) throw ConfigError("alpha max is below alpha min");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double value = min + static_cast<double>(i) * step;
    grid.push_back(std::round(value * 1e12) / 1e12 + 0.0);  // no -0
  }
  return grid;
}

}  // namespace wpe
