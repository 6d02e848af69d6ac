#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "wpe/errors.hpp"
#include "wpe/paths.hpp"

using namespace wpe;

namespace {

std::vector<std::vector<NodeId>> as_lists(const std::vector<Path>& paths) {
  std::vector<std::vector<NodeId>> out;
  for (const Path& p : paths) out.push_back(p.nodes);
  return out;
}

}  // namespace

TEST_CASE("toy graph paths") {
  const WeightedGraph g = test::toy_graph();
  auto id = [&](const char* s) { return test::id(g, s); };
  CHECK(as_lists(enumerate_simple_paths(g, id("1"), id("4"), 2)) ==
        std::vector<std::vector<NodeId>>{{id("1"), id("2"), id("4")}, {id("1"), id("3"), id("4")}});
  CHECK(enumerate_simple_paths(g, id("1"), id("5"), 2).empty());
  CHECK(as_lists(enumerate_simple_paths(g, id("1"), id("4"), 3)) ==
        std::vector<std::vector<NodeId>>{{id("1"), id("2"), id("3"), id("4")}, {id("1"), id("3"), id("2"), id("4")}});
  CHECK(enumerate_simple_paths(g, id("1"), id("2"), 1).size() == 1);
  CHECK_THROWS_AS(enumerate_simple_paths(g, id("1"), id("1"), 2), DomainError);
  CHECK_THROWS_AS(enumerate_simple_paths(g, id("1"), 42, 2), DomainError);
}

TEST_CASE("enumeration matches brute force on random graphs up to 8 nodes") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const WeightedGraph g = oracle::random_graph(rng, n, 0.3 + 0.5 * static_cast<double>(rng() % 100) / 100.0);
    const oracle::DenseGraph dense(g);
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (a == b) continue;
        for (std::size_t len = 1; len <= 4; ++len) {
          std::vector<std::vector<NodeId>> expected;
          for (const auto& seq : oracle::brute_force_paths(dense, a, b, len))
            expected.emplace_back(seq.begin(), seq.end());
          std::sort(expected.begin(), expected.end());
          const auto got = as_lists(enumerate_simple_paths(g, a, b, len));
          REQUIRE(got == expected);
          if (len >= 2) {
            for (const auto& p : got)
              for (std::size_t i = 0; i + 1 < p.size(); ++i) REQUIRE(NodePair::of(p[i], p[i + 1]) != NodePair::of(a, b));
          }
        }
      }
    }
  }
}

TEST_CASE("length-2 paths are in bijection with common neighbours") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const WeightedGraph g = oracle::random_graph(rng, 8, 0.5);
    for (NodeId a = 0; a < g.node_count(); ++a) {
      for (NodeId b = a + 1; b < g.node_count(); ++b) {
        std::set<NodeId> common;
        for (NodeId c : g.neighbors(a))
          if (g.has_link(c, b)) common.insert(c);
        std::set<NodeId> middles;
        for (const Path& p : enumerate_simple_paths(g, a, b, 2)) middles.insert(p.nodes[1]);
        REQUIRE(middles == common);
      }
    }
  }
}

TEST_CASE("per-source walk visits exactly the enumerated paths") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedGraph g = oracle::random_graph(rng, 7, 0.6);
    for (NodeId a = 0; a < g.node_count(); ++a) {
      std::set<std::vector<NodeId>> walked;
      for_each_simple_path_from(g, a, 3, [&](std::span<const NodeId> nodes, std::span<const std::size_t> entries) {
        REQUIRE(entries.size() + 1 == nodes.size());
        for (std::size_t i = 0; i < entries.size(); ++i) {
          const std::size_t offset = g.adjacency_offset(nodes[i]);
          REQUIRE(entries[i] >= offset);
          REQUIRE(g.neighbors(nodes[i])[entries[i] - offset] == nodes[i + 1]);
        }
        walked.emplace(nodes.begin(), nodes.end());
      });
      std::set<std::vector<NodeId>> expected;
      for (NodeId b = 0; b < g.node_count(); ++b) {
        if (b == a) continue;
        for (std::size_t len = 1; len <= 3; ++len)
          for (const Path& p : enumerate_simple_paths(g, a, b, len)) expected.insert(p.nodes);
      }
      REQUIRE(walked == expected);
    }
  }
}

TEST_CASE("path weight") {
  const WeightedGraph g = test::toy_graph();
  auto id = [&](const char* s) { return test::id(g, s); };
  CHECK(path_weight(g, Path{{id("1"), id("3"), id("4")}}) == 4.0);
  CHECK(path_weight(g, Path{{id("4"), id("3"), id("1")}}) == 4.0);
  CHECK(path_weight(g, Path{{id("2"), id("3")}}) == 2.0);
  CHECK(path_weight(g, Path{{id("1"), id("2"), id("3"), id("4")}}) ==
        path_weight(g, Path{{id("1"), id("2"), id("3")}}) + path_weight(g, Path{{id("3"), id("4")}}));
  CHECK_THROWS_AS(path_weight(g, Path{{id("1"), id("4")}}), DomainError);
  CHECK_THROWS_AS(path_weight(g, Path{{id("1")}}), DomainError);
}
