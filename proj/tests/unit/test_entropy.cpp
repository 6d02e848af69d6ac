#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "wpe/entropy.hpp"
#include "wpe/errors.hpp"

using namespace wpe;

TEST_CASE("link probability examples") {
  CHECK(link_probability(6, 2, 3) == doctest::Approx(0.8).epsilon(1e-14));  // 1 - C(4,3)/C(6,3)
  CHECK(link_probability(6, 0, 3) == 0.0);
  CHECK(link_probability(6, 3, 0) == 0.0);
  CHECK(link_probability(4, 3, 2) == 1.0);  // C(1,2) = 0
  CHECK(link_probability(1, 1, 1) == 1.0);
}

TEST_CASE("link probability agrees with a Monte-Carlo placement of stubs") {
  // kb links drawn without replacement from M; the link exists if any of
  // them is one of a's ka links.
  const std::size_t M = 6, ka = 2, kb = 3;
  std::mt19937_64 rng(11);
  std::vector<int> slots(M);
  int hits = 0;
  const int trials = 200000;
  for (int t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < M; ++i) slots[i] = static_cast<int>(i);
    std::shuffle(slots.begin(), slots.end(), rng);
    bool linked = false;
    for (std::size_t i = 0; i < kb; ++i) linked = linked || slots[i] < static_cast<int>(ka);
    hits += linked;
  }
  CHECK(static_cast<double>(hits) / trials == doctest::Approx(link_probability(M, ka, kb)).epsilon(0.005));
}

TEST_CASE("link entropy examples") {
  CHECK(link_entropy(6, 2, 3) == doctest::Approx(0.3219280948873623).epsilon(1e-12));
  CHECK(link_entropy(6, 3, 3) == doctest::Approx(0.07400058144377693).epsilon(1e-12));
  CHECK(link_entropy(4, 3, 2) == 0.0);
  CHECK(std::isinf(link_entropy(6, 0, 3)));
  CHECK(link_entropy(6, 0, 3) > 0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(link_probability(0, 0, 0), DomainError);
  CHECK_THROWS_AS(link_probability(5, 6, 1), DomainError);
  CHECK_THROWS_AS(link_entropy(5, 1, 6), DomainError);
}

TEST_CASE("log-space evaluation matches exact big-integer binomials for M <= 60") {
  double worst_p = 0.0, worst_h = 0.0;
  for (unsigned long M = 1; M <= 60; ++M) {
    for (unsigned long ka = 0; ka <= M; ++ka) {
      for (unsigned long kb = 0; kb <= M; ++kb) {
        const double exact_p = oracle::exact_link_probability(M, ka, kb).get_d();
        const double p = link_probability(M, ka, kb);
        if (exact_p == 0.0) {
          REQUIRE(p == 0.0);
        } else {
          worst_p = std::max(worst_p, std::abs(p - exact_p) / exact_p);
        }
        const double exact_h = oracle::exact_link_entropy(M, ka, kb);
        const double h = link_entropy(M, ka, kb);
        if (std::isinf(exact_h) || exact_h == 0.0) {
          REQUIRE(h == exact_h);
        } else {
          worst_h = std::max(worst_h, std::abs(h - exact_h) / exact_h);
        }
      }
    }
  }
  CHECK(worst_p < 1e-9);
  CHECK(worst_h < 1e-9);
}

TEST_CASE("probability is symmetric, bounded and monotone in both degrees") {
  for (std::size_t M = 1; M <= 40; ++M) {
    for (std::size_t ka = 0; ka <= M; ++ka) {
      for (std::size_t kb = 0; kb <= M; ++kb) {
        const double p = link_probability(M, ka, kb);
        REQUIRE(p >= 0.0);
        REQUIRE(p <= 1.0);
        REQUIRE(p == link_probability(M, kb, ka));
        if (ka < M) REQUIRE(link_probability(M, ka + 1, kb) >= p);
        if (kb < M) REQUIRE(link_probability(M, ka, kb + 1) >= p);
        const double h = link_entropy(M, ka, kb);
        REQUIRE(h >= 0.0);
        REQUIRE((h == 0.0) == (p == 1.0));
      }
    }
  }
}

TEST_CASE("path entropy on the toy graph") {
  const WeightedGraph g = test::toy_graph();
  const LinkEntropyContext ctx(g);
  const NodeId n1 = test::id(g, "1"), n2 = test::id(g, "2"), n3 = test::id(g, "3"), n4 = test::id(g, "4");
  const Path p{{n1, n2, n4}};
  CHECK(ctx.path_entropy(p) == doctest::Approx(0.3959286763311392).epsilon(1e-12));
  CHECK(ctx.path_entropy(Path{{n1, n2}}) == link_entropy(6, 2, 3));
  // Additivity at a shared node and invariance under reversal.
  const Path abc{{n1, n2, n3, n4}};
  CHECK(ctx.path_entropy(Path{{n1, n2, n3}}) ==
        ctx.path_entropy(Path{{n1, n2}}) + ctx.path_entropy(Path{{n2, n3}}));
  CHECK(ctx.path_entropy(abc) == doctest::Approx(ctx.path_entropy(Path{{n1, n2, n3}}) +
                                                 ctx.path_entropy(Path{{n3, n4}})).epsilon(1e-15));
  CHECK(ctx.path_entropy(Path{{n4, n3, n2, n1}}) == ctx.path_entropy(abc));

  CHECK_THROWS_AS(ctx.path_entropy(Path{{n1}}), DomainError);
  CHECK_THROWS_AS(ctx.path_entropy(Path{{n1, n2, n1}}), DomainError);
  CHECK_THROWS_AS(ctx.path_entropy(Path{{n1, 99}}), DomainError);
}

TEST_CASE("path entropy is reversal invariant on random graphs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightedGraph g = oracle::random_graph(rng, 8, 0.5);
    const LinkEntropyContext ctx(g);
    for (NodeId a = 0; a < g.node_count(); ++a) {
      for_each_simple_path_from(g, a, 3, [&](std::span<const NodeId> nodes, std::span<const std::size_t> entries) {
        Path p{{nodes.begin(), nodes.end()}};
        Path r{{nodes.rbegin(), nodes.rend()}};
        REQUIRE(ctx.path_entropy(p) == ctx.path_entropy(r));
        double from_entries = 0.0;
        for (std::size_t e : entries) from_entries += ctx.entry_entropy(e);
        REQUIRE(from_entries == doctest::Approx(ctx.path_entropy(p)).epsilon(1e-14));
      });
    }
  }
}
