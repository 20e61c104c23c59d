#include "simgraph/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace simgraph {

bool SparseGraph::has_edge(int i, int j) const {
  const auto& row = adj_[static_cast<std::size_t>(i)];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const Edge& e, int v) { return e.to < v; });
  return it != row.end() && it->to == j;
}

void SparseGraph::add_edge(int i, int j, double weight) {
  if (i == j) throw GraphError("self-loop on node " + std::to_string(i));
  if (i < 0 || j < 0 || i >= size() || j >= size()) throw GraphError("edge endpoint out of range");
  const auto insert = [](std::vector<Edge>& row, int to, double w) {
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const Edge& e, int v) { return e.to < v; });
    if (it != row.end() && it->to == to) return false;
    row.insert(it, Edge{to, w});
    return true;
  };
  if (insert(adj_[static_cast<std::size_t>(i)], j, weight)) {
    insert(adj_[static_cast<std::size_t>(j)], i, weight);
    ++edges_;
  }
}

std::vector<WeightedEdge> SparseGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edges_);
  for (int i = 0; i < size(); ++i) {
    for (const Edge& e : neighbors(i)) {
      if (i < e.to) out.push_back({i, e.to, e.weight});
    }
  }
  return out;
}

SparseGraph build_complete(const DistanceModel& dm) {
  const int n = dm.size();
  SparseGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j, dm(i, j));
  }
  return g;
}

double epsilon_radius(const DistanceModel& dm, int K) {
  double sum = 0.0;
  for (int i = 0; i < dm.size(); ++i) sum += dm.kth_neighbor_distance(i, K);
  return sum / dm.size();
}

SparseGraph build_epsilon(const DistanceModel& dm, int K) {
  const double eps = epsilon_radius(dm, K);
  const int n = dm.size();
  SparseGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dm(i, j) <= eps) g.add_edge(i, j, dm(i, j));
    }
  }
  return g;
}

SparseGraph build_knn(const DistanceModel& dm, int K, bool mutual) {
  const int n = dm.size();
  if (K < 1 || K > n - 1) throw GraphError("build_knn: K out of range");
  // directed[i*n + j]: j is among the K nearest neighbors of i
  std::vector<char> directed(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j : dm.neighbors(i).first(static_cast<std::size_t>(K))) {
      directed[static_cast<std::size_t>(i) * n + j] = 1;
    }
  }
  SparseGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool ij = directed[static_cast<std::size_t>(i) * n + j] != 0;
      const bool ji = directed[static_cast<std::size_t>(j) * n + i] != 0;
      if (mutual ? (ij && ji) : (ij || ji)) g.add_edge(i, j, dm(i, j));
    }
  }
  return g;
}

SparseGraph build_sparse_graph(const DistanceModel& dm, const SparsityModel& model) {
  switch (model.kind) {
    case SparsityKind::Full:
      return build_complete(dm);
    case SparsityKind::Epsilon:
      return build_epsilon(dm, model.K);
    case SparsityKind::Knn:
      return build_knn(dm, model.K, false);
    case SparsityKind::MutualKnn:
      return build_knn(dm, model.K, true);
  }
  throw GraphError("unknown sparsity model");
}

std::vector<std::vector<int>> connected_components(const SparseGraph& g) {
  const int n = g.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<int> q;
    q.push(s);
    comp[static_cast<std::size_t>(s)] = id;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      out.back().push_back(u);
      for (const Edge& e : g.neighbors(u)) {
        if (comp[static_cast<std::size_t>(e.to)] < 0) {
          comp[static_cast<std::size_t>(e.to)] = id;
          q.push(e.to);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

bool is_connected(const SparseGraph& g) {
  return g.size() <= 1 || connected_components(g).size() == 1;
}

SparseGraph aggregate_components(const SparseGraph& g, const DistanceModel& dm) {
  const auto comps = connected_components(g);
  const int c = static_cast<int>(comps.size());
  if (c <= 1) return g;

  const int n = g.size();
  std::vector<int> comp_of(static_cast<std::size_t>(n));
  for (int id = 0; id < c; ++id) {
    for (int v : comps[static_cast<std::size_t>(id)]) comp_of[static_cast<std::size_t>(v)] = id;
  }

  // closest point pair for every component pair
  struct Bridge {
    double weight = std::numeric_limits<double>::infinity();
    int i = -1;
    int j = -1;
  };
  std::vector<Bridge> best(static_cast<std::size_t>(c) * static_cast<std::size_t>(c));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int a = comp_of[static_cast<std::size_t>(i)];
      int b = comp_of[static_cast<std::size_t>(j)];
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      Bridge& br = best[static_cast<std::size_t>(a) * c + b];
      if (dm(i, j) < br.weight) br = {dm(i, j), i, j};
    }
  }

  std::vector<std::tuple<double, int, int>> candidates;
  for (int a = 0; a < c; ++a) {
    for (int b = a + 1; b < c; ++b) candidates.emplace_back(best[static_cast<std::size_t>(a) * c + b].weight, a, b);
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<int> parent(static_cast<std::size_t>(c));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };

  SparseGraph out = g;
  int joined = 0;
  for (const auto& [w, a, b] : candidates) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) continue;
    parent[static_cast<std::size_t>(rb)] = ra;
    const Bridge& br = best[static_cast<std::size_t>(a) * c + b];
    out.add_edge(br.i, br.j, br.weight);
    if (++joined == c - 1) break;
  }
  return out;
}

void write_edge_list(const SparseGraph& g, std::ostream& out) {
  const auto old = out.precision(17);
  for (const auto& e : g.edges()) out << e.i + 1 << ' ' << e.j + 1 << ' ' << e.weight << '\n';
  out.precision(old);
}

}  // namespace simgraph
