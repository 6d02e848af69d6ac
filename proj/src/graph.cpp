#include "wpe/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "wpe/errors.hpp"

namespace wpe {

WeightedGraph WeightedGraph::from_links(std::size_t node_count, std::span<const Link> links,
                                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != node_count)
    throw DomainError("label count does not match node count");
  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
  }

  WeightedGraph g;
  std::vector<std::size_t> degree(node_count, 0);
  for (const Link& l : links) {
    if (l.u >= node_count || l.v >= node_count) throw DomainError("link endpoint out of range");
    if (l.u == l.v) throw DomainError("self-loop on node " + labels[l.u]);
    if (!(l.weight > 0.0) || !std::isfinite(l.weight))
      throw DomainError("link weight must be finite and strictly positive");
    ++degree[l.u];
    ++degree[l.v];
  }

  g.offsets_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.neighbors_.resize(g.offsets_.back());
  g.weights_.resize(g.offsets_.back());

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Link& l : links) {
    g.neighbors_[cursor[l.u]] = l.v;
    g.weights_[cursor[l.u]++] = l.weight;
    g.neighbors_[cursor[l.v]] = l.u;
    g.weights_[cursor[l.v]++] = l.weight;
  }

  std::vector<std::pair<NodeId, double>> scratch;
  for (std::size_t u = 0; u < node_count; ++u) {
    const std::size_t lo = g.offsets_[u], hi = g.offsets_[u + 1];
    scratch.clear();
    for (std::size_t i = lo; i < hi; ++i) scratch.emplace_back(g.neighbors_[i], g.weights_[i]);
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t i = lo; i < hi; ++i) {
      if (i > lo && scratch[i - lo].first == scratch[i - lo - 1].first)
        throw DomainError("parallel link between " + labels[u] + " and " +
                          labels[scratch[i - lo].first]);
      g.neighbors_[i] = scratch[i - lo].first;
      g.weights_[i] = scratch[i - lo].second;
    }
  }

  g.labels_ = std::move(labels);
  g.index_.reserve(g.labels_.size());
  for (std::size_t i = 0; i < g.labels_.size(); ++i) {
    if (!g.index_.emplace(g.labels_[i], static_cast<NodeId>(i)).second)
      throw DomainError("duplicate node label '" + g.labels_[i] + "'");
  }
  return g;
}

bool WeightedGraph::has_link(NodeId u, NodeId v) const { return weight(u, v).has_value(); }

std::optional<double> WeightedGraph::weight(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return weights_[offsets_[u] + static_cast<std::size_t>(it - nbrs.begin())];
}

double WeightedGraph::link_weight(NodeId u, NodeId v) const {
  const auto w = weight(u, v);
  if (!w) throw DomainError("no link between nodes " + std::to_string(u) + " and " + std::to_string(v));
  return *w;
}

std::vector<Link> WeightedGraph::links() const {
  std::vector<Link> out;
  out.reserve(link_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    const auto nbrs = neighbors(u);
    const auto ws = weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      if (u < nbrs[i]) out.push_back({u, nbrs[i], ws[i]});
  }
  return out;
}

std::optional<NodeId> WeightedGraph::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Component id per node via iterative DFS; returns the id of the largest
// component (lowest id among equally large ones).
std::size_t label_components(const WeightedGraph& g, std::vector<std::size_t>& component) {
  const std::size_t n = g.node_count();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  component.assign(n, unvisited);
  std::vector<std::size_t> sizes;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (component[s] != unvisited) continue;
    const std::size_t id = sizes.size();
    sizes.push_back(0);
    component[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++sizes[id];
      for (NodeId v : g.neighbors(u)) {
        if (component[v] == unvisited) {
          component[v] = id;
          stack.push_back(v);
        }
      }
    }
  }
  return static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

// Integer labels order numerically and before any other label.
bool label_less(const std::string& x, const std::string& y) {
  auto as_int = [](const std::string& s) -> std::optional<long long> {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  };
  const auto xi = as_int(x), yi = as_int(y);
  if (xi && yi) return *xi != *yi ? *xi < *yi : x < y;
  if (xi || yi) return xi.has_value();
  return x < y;
}

}  // namespace

WeightedGraph preprocess(std::span<const RawRecord> records, const PreprocessOptions& options) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::map<NodePair, double> merged;
  for (const RawRecord& r : records) {
    if (!(r.weight > 0.0) || !std::isfinite(r.weight))
      throw ParseError("link weight must be finite and strictly positive", r.line);
    if (r.from == r.to) {
      if (options.drop_self_loops) continue;
      throw DomainError("self-loop on node '" + r.from + "' and self-loop removal is disabled");
    }
    const NodePair key = NodePair::of(id_of(r.from), id_of(r.to));
    auto [it, inserted] = merged.emplace(key, r.weight);
    if (!inserted) {
      it->second = options.merge == MergeRule::sum ? it->second + r.weight
                                                   : std::max(it->second, r.weight);
    }
  }
  if (merged.empty()) throw EmptyGraphError("graph has no links after preprocessing");

  // Nodes that only appeared in dropped self-loops are discarded. Dense ids
  // follow label order so they do not depend on record order.
  std::vector<char> used(labels.size(), 0);
  for (const auto& [pair, w] : merged) used[pair.a] = used[pair.b] = 1;
  std::vector<NodeId> order;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (used[i]) order.push_back(static_cast<NodeId>(i));
  std::sort(order.begin(), order.end(),
            [&](NodeId x, NodeId y) { return label_less(labels[x], labels[y]); });
  std::vector<NodeId> remap(labels.size(), 0);
  std::vector<std::string> kept;
  kept.reserve(order.size());
  for (NodeId old_id : order) {
    remap[old_id] = static_cast<NodeId>(kept.size());
    kept.push_back(labels[old_id]);
  }
  std::vector<Link> links;
  links.reserve(merged.size());
  for (const auto& [pair, w] : merged) links.push_back({remap[pair.a], remap[pair.b], w});

  const std::size_t kept_count = kept.size();
  WeightedGraph g = WeightedGraph::from_links(kept_count, links, std::move(kept));
  if (!options.keep_lcc) return g;

  std::vector<std::size_t> component;
  const std::size_t largest = label_components(g, component);
  if (std::all_of(component.begin(), component.end(), [&](std::size_t c) { return c == largest; }))
    return g;

  std::vector<NodeId> lcc_id(g.node_count(), 0);
  std::vector<std::string> lcc_labels;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (component[u] != largest) continue;
    lcc_id[u] = static_cast<NodeId>(lcc_labels.size());
    lcc_labels.push_back(g.label(u));
  }
  std::vector<Link> lcc_links;
  for (const Link& l : g.links())
    if (component[l.u] == largest) lcc_links.push_back({lcc_id[l.u], lcc_id[l.v], l.weight});
  const std::size_t lcc_count = lcc_labels.size();
  return WeightedGraph::from_links(lcc_count, lcc_links, std::move(lcc_labels));
}

std::vector<RawRecord> to_records(const WeightedGraph& g) {
  std::vector<RawRecord> out;
  out.reserve(g.link_count());
  for (const Link& l : g.links()) out.push_back({g.label(l.u), g.label(l.v), l.weight, 0});
  return out;
}

double local_clustering(const WeightedGraph& g, NodeId v) {
  const auto nbrs = g.neighbors(v);
  const std::size_t k = nbrs.size();
  if (k < 2) return 0.0;
  std::size_t closed = 0;
  for (std::size_t i = 0; i < k; ++i) {
    // Sorted-list intersection of N(nbrs[i]) with the tail of N(v).
    const auto other = g.neighbors(nbrs[i]);
    auto it = std::upper_bound(other.begin(), other.end(), nbrs[i]);
    auto jt = nbrs.begin() + static_cast<std::ptrdiff_t>(i) + 1;
    while (it != other.end() && jt != nbrs.end()) {
      if (*it < *jt) ++it;
      else if (*jt < *it) ++jt;
      else { ++closed; ++it; ++jt; }
    }
  }
  return 2.0 * static_cast<double>(closed) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

GraphStats stats(const WeightedGraph& g) {
  if (g.node_count() == 0) throw DomainError("stats of an empty graph");
  GraphStats s;
  s.node_count = g.node_count();
  s.link_count = g.link_count();
  const double n = static_cast<double>(s.node_count);
  double k2 = 0.0;
  std::vector<double> local(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const double k = static_cast<double>(g.degree(v));
    k2 += k * k;
    local[v] = local_clustering(g, v);
  }
  // Summing in sorted order keeps C independent of the input record order.
  std::sort(local.begin(), local.end());
  const double c = std::accumulate(local.begin(), local.end(), 0.0);
  s.mean_degree = 2.0 * static_cast<double>(s.link_count) / n;
  s.degree_heterogeneity = s.mean_degree > 0.0 ? (k2 / n) / (s.mean_degree * s.mean_degree) : 0.0;
  s.clustering = c / n;
  return s;
}

}  // namespace wpe
