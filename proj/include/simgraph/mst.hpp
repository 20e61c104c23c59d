#pragma once

#include "simgraph/graph.hpp"
#include "simgraph/metric.hpp"

#include <vector>

namespace simgraph {

/// Spanning tree rooted at node 0 in parent-vector form.
struct SpanningTree {
  std::vector<int> parent;          // parent[0] == -1
  std::vector<double> edge_weight;  // weight of (i, parent[i]); 0 for the root
  double max_edge = 0.0;

  double total_weight() const;
};

/// Prim's algorithm with a binary heap, O((e + n) log n). Ties in key are
/// resolved by the smaller node index. Throws GraphError if g is disconnected.
SpanningTree prim(const SparseGraph& g);

/// Prim on the complete graph of all pairwise distances, O(n^2) without a heap.
SpanningTree prim(const DistanceModel& dm);

}  // namespace simgraph
