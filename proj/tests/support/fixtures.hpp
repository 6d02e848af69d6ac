#pragma once

#include <vector>

#include "wpe/graph.hpp"

namespace wpe::test {

// Five-node toy graph: 1-2 w1, 2-3 w2, 3-4 w1, 4-5 w2, 1-3 w3, 2-4 w1.
// Labels are "1".."5", dense ids 0..4.
inline WeightedGraph toy_graph() {
  const std::vector<RawRecord> records{
      {"1", "2", 1.0, 1}, {"2", "3", 2.0, 2}, {"3", "4", 1.0, 3},
      {"4", "5", 2.0, 4}, {"1", "3", 3.0, 5}, {"2", "4", 1.0, 6},
  };
  return preprocess(records);
}

inline NodeId id(const WeightedGraph& g, const char* label) { return *g.find(label); }

}  // namespace wpe::test
