#include "simgraph/mst.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace simgraph {

double SpanningTree::total_weight() const {
  double sum = 0.0;
  for (double w : edge_weight) sum += w;
  return sum;
}

namespace {

void finish(SpanningTree& t) {
  t.max_edge = 0.0;
  for (std::size_t i = 0; i < t.parent.size(); ++i) {
    if (t.parent[i] >= 0) t.max_edge = std::max(t.max_edge, t.edge_weight[i]);
  }
}

}  // namespace

SpanningTree prim(const SparseGraph& g) {
  const int n = g.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  SpanningTree t;
  t.parent.assign(static_cast<std::size_t>(n), -1);
  t.edge_weight.assign(static_cast<std::size_t>(n), 0.0);
  if (n == 0) return t;

  std::vector<double> key(static_cast<std::size_t>(n), inf);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  key[0] = 0.0;
  heap.emplace(0.0, 0);
  int reached = 0;
  while (!heap.empty()) {
    const auto [k, u] = heap.top();
    heap.pop();
    if (done[static_cast<std::size_t>(u)] || k > key[static_cast<std::size_t>(u)]) continue;
    done[static_cast<std::size_t>(u)] = 1;
    ++reached;
    for (const Edge& e : g.neighbors(u)) {
      const auto v = static_cast<std::size_t>(e.to);
      if (!done[v] && e.weight < key[v]) {
        key[v] = e.weight;
        t.parent[v] = u;
        t.edge_weight[v] = e.weight;
        heap.emplace(e.weight, e.to);
      }
    }
  }
  if (reached != n) throw GraphError("prim: graph is not connected");
  finish(t);
  return t;
}

SpanningTree prim(const DistanceModel& dm) {
  const int n = dm.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  SpanningTree t;
  t.parent.assign(static_cast<std::size_t>(n), -1);
  t.edge_weight.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> key(static_cast<std::size_t>(n), inf);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  key[0] = 0.0;
  for (int step = 0; step < n; ++step) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (!done[static_cast<std::size_t>(v)] && (u < 0 || key[static_cast<std::size_t>(v)] < key[static_cast<std::size_t>(u)])) u = v;
    }
    done[static_cast<std::size_t>(u)] = 1;
    for (int v = 0; v < n; ++v) {
      if (!done[static_cast<std::size_t>(v)] && dm(u, v) < key[static_cast<std::size_t>(v)]) {
        key[static_cast<std::size_t>(v)] = dm(u, v);
        t.parent[static_cast<std::size_t>(v)] = u;
        t.edge_weight[static_cast<std::size_t>(v)] = dm(u, v);
      }
    }
  }
  finish(t);
  return t;
}

}  // namespace simgraph
