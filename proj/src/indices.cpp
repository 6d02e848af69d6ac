#include "wpe/indices.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "wpe/errors.hpp"
#include "wpe/paths.hpp"

namespace wpe {

IndexFamily parse_index_family(std::string_view name) {
  static constexpr std::pair<std::string_view, IndexFamily> table[] = {
      {"CN", IndexFamily::CN},   {"AA", IndexFamily::AA},   {"LP", IndexFamily::LP},
      {"WCN", IndexFamily::WCN}, {"WAA", IndexFamily::WAA}, {"WLP", IndexFamily::WLP},
      {"PE", IndexFamily::PE},   {"WPE", IndexFamily::WPE},
  };
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const auto& [key, family] : table)
    if (key == upper) return family;
  throw ConfigError("unknown index '" + std::string(name) + "' (expected CN, AA, LP, WCN, WAA, WLP, PE or WPE)");
}

std::string_view to_string(IndexFamily family) {
  switch (family) {
    case IndexFamily::CN: return "CN";
    case IndexFamily::AA: return "AA";
    case IndexFamily::LP: return "LP";
    case IndexFamily::WCN: return "WCN";
    case IndexFamily::WAA: return "WAA";
    case IndexFamily::WLP: return "WLP";
    case IndexFamily::PE: return "PE";
    case IndexFamily::WPE: return "WPE";
  }
  return "?";
}

IndexFamily unweighted_counterpart(IndexFamily f) noexcept {
  switch (f) {
    case IndexFamily::WCN: return IndexFamily::CN;
    case IndexFamily::WAA: return IndexFamily::AA;
    case IndexFamily::WLP: return IndexFamily::LP;
    case IndexFamily::WPE: return IndexFamily::PE;
    default: return f;
  }
}

int IndexSpec::max_path_length() const noexcept {
  switch (family) {
    case IndexFamily::LP:
    case IndexFamily::WLP: return 3;
    case IndexFamily::PE:
    case IndexFamily::WPE: return path_limit;
    default: return 2;
  }
}

void IndexSpec::validate() const {
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw ConfigError("epsilon must be finite and non-negative");
  if (is_entropy_family(family) && path_limit != 2 && path_limit != 3)
    throw ConfigError("path limit l must be 2 or 3");
}

std::string IndexSpec::name() const {
  std::string out(to_string(family));
  if (is_entropy_family(family)) out += "(l=" + std::to_string(path_limit) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// ScoreTable

ScoreTable::ScoreTable(IndexSpec spec, std::shared_ptr<const std::vector<NodePair>> pairs,
                       std::vector<double> scores)
    : spec_(spec), pairs_(std::move(pairs)), scores_(std::move(scores)) {
  if (!pairs_ || pairs_->size() != scores_.size()) throw DomainError("score table pair/score size mismatch");
  if (std::any_of(scores_.begin(), scores_.end(), [](double s) { return std::isnan(s); }))
    throw DomainError("score table contains NaN");
}

std::optional<std::size_t> ScoreTable::find(NodeId a, NodeId b) const {
  const NodePair key = NodePair::of(a, b);
  const auto it = std::lower_bound(pairs_->begin(), pairs_->end(), key);
  if (it == pairs_->end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_->begin());
}

std::optional<double> ScoreTable::score(NodeId a, NodeId b) const {
  const auto pos = find(a, b);
  if (!pos) return std::nullopt;
  return scores_[*pos];
}

double ScoreTable::at(NodeId a, NodeId b) const {
  const auto s = score(a, b);
  if (!s) throw DomainError("pair is not a candidate of this score table");
  return *s;
}

namespace {

// Likeliest first; equal keys fall back to pair order, which is index order.
auto rank_before(std::span<const double> scores, ScoreDirection d) {
  return [scores, d](std::size_t x, std::size_t y) {
    const double kx = likelihood_key(scores[x], d), ky = likelihood_key(scores[y], d);
    if (kx != ky) return kx > ky;
    return x < y;
  };
}

}  // namespace

std::vector<std::size_t> ScoreTable::ranking() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), rank_before(scores_, spec_.direction()));
  return order;
}

std::vector<std::size_t> ScoreTable::top(std::size_t count) const {
  count = std::min(count, size());
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto cmp = rank_before(scores_, spec_.direction());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(), cmp);
  order.resize(count);
  return order;
}

// ---------------------------------------------------------------------------
// Per-pair scoring, straight from the definitions.

namespace {

void check_candidate(const WeightedGraph& g, NodeId a, NodeId b) {
  if (!g.contains(a) || !g.contains(b)) throw DomainError("node not in graph");
  if (a == b) throw DomainError("cannot score a node against itself");
  if (g.has_link(a, b)) throw DomainError("pair is already linked");
}

struct CommonNeighbor {
  NodeId node;
  double weight_a;
  double weight_b;
};

std::vector<CommonNeighbor> common_neighbors(const WeightedGraph& g, NodeId a, NodeId b) {
  std::vector<CommonNeighbor> out;
  const auto na = g.neighbors(a), nb = g.neighbors(b);
  const auto wa = g.weights(a), wb = g.weights(b);
  std::size_t i = 0, j = 0;
  while (i < na.size() && j < nb.size()) {
    if (na[i] < nb[j]) ++i;
    else if (nb[j] < na[i]) ++j;
    else { out.push_back({na[i], wa[i], wb[j]}); ++i; ++j; }
  }
  return out;
}

double strength(const WeightedGraph& g, NodeId c, double alpha) {
  double s = 0.0;
  for (double w : g.weights(c)) s += std::pow(w, alpha);
  return s;
}

}  // namespace

double score_neighbor_index(const WeightedGraph& g, NodeId a, NodeId b, IndexFamily family, double alpha) {
  check_candidate(g, a, b);
  if (a > b) std::swap(a, b);
  double score = 0.0;
  for (const CommonNeighbor& c : common_neighbors(g, a, b)) {
    switch (family) {
      case IndexFamily::CN:
        score += 1.0;
        break;
      case IndexFamily::AA:
        assert(g.degree(c.node) >= 2);
        score += 1.0 / std::log2(static_cast<double>(g.degree(c.node)));
        break;
      case IndexFamily::WCN:
        score += std::pow(c.weight_a, alpha) + std::pow(c.weight_b, alpha);
        break;
      case IndexFamily::WAA:
        score += (std::pow(c.weight_a, alpha) + std::pow(c.weight_b, alpha)) /
                 std::log2(1.0 + strength(g, c.node, alpha));
        break;
      default:
        throw DomainError("not a neighbour-based index: " + std::string(to_string(family)));
    }
  }
  return score;
}

double score_path_count_index(const WeightedGraph& g, NodeId a, NodeId b, IndexFamily family, double epsilon,
                              double alpha) {
  check_candidate(g, a, b);
  if (family != IndexFamily::LP && family != IndexFamily::WLP)
    throw DomainError("not a path-count index: " + std::string(to_string(family)));
  if (a > b) std::swap(a, b);
  const auto two = enumerate_simple_paths(g, a, b, 2);
  const auto three = enumerate_simple_paths(g, a, b, 3);
  if (family == IndexFamily::LP)
    return static_cast<double>(two.size()) + epsilon * static_cast<double>(three.size());

  auto wp = [&](NodeId u, NodeId v) { return std::pow(g.link_weight(u, v), alpha); };
  double first = 0.0;
  for (const Path& p : two) first += wp(a, p.nodes[1]) + wp(p.nodes[1], b);
  double second = 0.0;
  for (const Path& p : three) {
    const NodeId i = p.nodes[1], j = p.nodes[2];
    second += (wp(a, i) + wp(i, j)) * (wp(i, j) + wp(j, b));
  }
  return first + epsilon * second;
}

double score_entropy_index(const LinkEntropyContext& ctx, NodeId a, NodeId b, IndexFamily family,
                           int path_limit, double alpha) {
  const WeightedGraph& g = ctx.graph();
  check_candidate(g, a, b);
  if (!is_entropy_family(family)) throw DomainError("not an entropy index: " + std::string(to_string(family)));
  if (path_limit < 2) throw DomainError("path limit must be at least 2");
  if (family == IndexFamily::PE) alpha = 0.0;
  if (a > b) std::swap(a, b);

  const double self_information = ctx.pair_entropy(a, b);
  if (std::isinf(self_information)) return kInfiniteEntropy;
  double shared = 0.0;
  for (int i = 2; i <= path_limit; ++i) {
    double by_length = 0.0;
    for (const Path& p : enumerate_simple_paths(g, a, b, static_cast<std::size_t>(i)))
      by_length += std::pow(path_weight(g, p), alpha) * ctx.path_entropy(p);
    shared += by_length / static_cast<double>(i - 1);
  }
  return self_information - shared;
}

double score_entropy_index(const WeightedGraph& g, NodeId a, NodeId b, IndexFamily family, int path_limit,
                           double alpha) {
  return score_entropy_index(LinkEntropyContext(g), a, b, family, path_limit, alpha);
}

double score_pair(const WeightedGraph& g, NodeId a, NodeId b, const IndexSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case IndexFamily::CN:
    case IndexFamily::AA:
    case IndexFamily::WCN:
    case IndexFamily::WAA: return score_neighbor_index(g, a, b, spec.family, spec.alpha);
    case IndexFamily::LP:
    case IndexFamily::WLP: return score_path_count_index(g, a, b, spec.family, spec.epsilon, spec.alpha);
    case IndexFamily::PE:
    case IndexFamily::WPE: return score_entropy_index(g, a, b, spec.family, spec.path_limit, spec.alpha);
  }
  throw DomainError("unknown index family");
}

// ---------------------------------------------------------------------------
// All-pairs scoring: one bounded DFS per source node feeds per-target
// accumulators for every alpha at once.

std::vector<ScoreTable> score_all_pairs(const WeightedGraph& g, const IndexSpec& spec,
                                        std::span<const double> alphas) {
  spec.validate();
  if (g.empty()) throw DomainError("cannot score an empty graph");
  if (alphas.empty()) return {};
  for (double alpha : alphas)
    if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");

  const IndexFamily family = spec.family;
  const std::size_t n = g.node_count();
  // Families that ignore alpha are computed once and copied.
  const bool uses_alpha = is_weighted(family);
  std::vector<double> effective(alphas.begin(), alphas.end());
  if (!uses_alpha) effective.assign(1, 0.0);
  const std::size_t na = effective.size();

  // W^alpha per adjacency entry, and 1 / log2(1 + S_c) per node for WAA.
  std::vector<double> entry_pow;
  std::vector<double> inv_log_strength;
  if (family == IndexFamily::WCN || family == IndexFamily::WAA || family == IndexFamily::WLP) {
    entry_pow.resize(g.adjacency_size() * na);
    for (NodeId u = 0; u < n; ++u) {
      const auto ws = g.weights(u);
      const std::size_t base = g.adjacency_offset(u);
      for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t k = 0; k < na; ++k) entry_pow[(base + i) * na + k] = std::pow(ws[i], effective[k]);
    }
  }
  if (family == IndexFamily::WAA) {
    inv_log_strength.resize(n * na);
    for (NodeId c = 0; c < n; ++c)
      for (std::size_t k = 0; k < na; ++k)
        inv_log_strength[c * na + k] = 1.0 / std::log2(1.0 + strength(g, c, effective[k]));
  }
  std::vector<double> entry_weight;
  std::optional<LinkEntropyContext> ctx;
  if (is_entropy_family(family)) {
    ctx.emplace(g);
    entry_weight.resize(g.adjacency_size());
    for (NodeId u = 0; u < n; ++u) {
      const auto ws = g.weights(u);
      std::copy(ws.begin(), ws.end(), entry_weight.begin() + static_cast<std::ptrdiff_t>(g.adjacency_offset(u)));
    }
  }

  auto pairs = std::make_shared<std::vector<NodePair>>();
  std::vector<std::vector<double>> scores(na);
  const std::size_t expected = n * (n - 1) / 2 - g.link_count();
  pairs->reserve(expected);
  for (auto& s : scores) s.reserve(expected);

  std::vector<double> acc(n * na, 0.0);
  std::vector<NodeId> touched;
  std::vector<char> is_touched(n, 0);
  std::vector<char> linked(n, 0);
  const double eps = spec.epsilon;
  const auto max_length = static_cast<std::size_t>(spec.max_path_length());

  for (NodeId a = 0; a < n; ++a) {
    for (NodeId v : g.neighbors(a)) linked[v] = 1;

    for_each_simple_path_from(g, a, max_length, [&](std::span<const NodeId> nodes, std::span<const std::size_t> e) {
      const std::size_t len = e.size();
      const NodeId b = nodes.back();
      if (len < 2 || b < a || linked[b]) return;
      if (!is_touched[b]) {
        is_touched[b] = 1;
        touched.push_back(b);
      }
      double* out = &acc[b * na];
      switch (family) {
        case IndexFamily::CN:
          if (len == 2) out[0] += 1.0;
          break;
        case IndexFamily::AA:
          if (len == 2) out[0] += 1.0 / std::log2(static_cast<double>(g.degree(nodes[1])));
          break;
        case IndexFamily::LP:
          out[0] += len == 2 ? 1.0 : eps;
          break;
        case IndexFamily::WCN:
          if (len == 2)
            for (std::size_t k = 0; k < na; ++k) out[k] += entry_pow[e[0] * na + k] + entry_pow[e[1] * na + k];
          break;
        case IndexFamily::WAA:
          if (len == 2)
            for (std::size_t k = 0; k < na; ++k)
              out[k] += (entry_pow[e[0] * na + k] + entry_pow[e[1] * na + k]) * inv_log_strength[nodes[1] * na + k];
          break;
        case IndexFamily::WLP:
          for (std::size_t k = 0; k < na; ++k) {
            const double w0 = entry_pow[e[0] * na + k], w1 = entry_pow[e[1] * na + k];
            if (len == 2) out[k] += w0 + w1;
            else out[k] += eps * ((w0 + w1) * (w1 + entry_pow[e[2] * na + k]));
          }
          break;
        case IndexFamily::PE:
        case IndexFamily::WPE: {
          double h = 0.0, w = 0.0;
          for (std::size_t t : e) {
            h += ctx->entry_entropy(t);
            w += entry_weight[t];
          }
          const double penalty = static_cast<double>(len - 1);
          for (std::size_t k = 0; k < na; ++k) out[k] += std::pow(w, effective[k]) * h / penalty;
          break;
        }
      }
    });

    for (NodeId b = a + 1; b < n; ++b) {
      if (linked[b]) continue;
      pairs->push_back({a, b});
      const double* in = &acc[b * na];
      if (ctx) {
        const double self_information = ctx->pair_entropy(a, b);
        for (std::size_t k = 0; k < na; ++k)
          scores[k].push_back(std::isinf(self_information) ? kInfiniteEntropy : self_information - in[k]);
      } else {
        for (std::size_t k = 0; k < na; ++k) scores[k].push_back(in[k]);
      }
    }

    for (NodeId b : touched) {
      std::fill_n(acc.begin() + static_cast<std::ptrdiff_t>(b * na), na, 0.0);
      is_touched[b] = 0;
    }
    touched.clear();
    for (NodeId v : g.neighbors(a)) linked[v] = 0;
  }

  std::vector<ScoreTable> out;
  out.reserve(alphas.size());
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    IndexSpec s = spec;
    s.alpha = uses_alpha ? alphas[k] : spec.alpha;
    out.emplace_back(s, pairs, uses_alpha ? std::move(scores[k]) : scores[0]);
  }
  return out;
}

ScoreTable score_all_pairs(const WeightedGraph& g, const IndexSpec& spec) {
  const double alpha[] = {spec.alpha};
  return std::move(score_all_pairs(g, spec, alpha).front());
}

}  // namespace wpe
