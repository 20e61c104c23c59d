#pragma once

#include "simgraph/metric.hpp"

#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace simgraph {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  int to;
  double weight;
};

struct WeightedEdge {
  int i;
  int j;
  double weight;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected weighted graph stored as per-node adjacency lists sorted by
/// neighbor index. Weights are distances.
class SparseGraph {
 public:
  explicit SparseGraph(int n = 0) : adj_(static_cast<std::size_t>(n)) {}

  int size() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return edges_; }

  std::span<const Edge> neighbors(int i) const { return adj_[static_cast<std::size_t>(i)]; }
  int degree(int i) const { return static_cast<int>(adj_[static_cast<std::size_t>(i)].size()); }
  bool has_edge(int i, int j) const;

  /// Adds the undirected edge (i,j); a second insertion of the same pair is ignored.
  void add_edge(int i, int j, double weight);

  /// All edges with i < j, sorted by (i, j).
  std::vector<WeightedEdge> edges() const;

 private:
  std::vector<std::vector<Edge>> adj_;
  std::size_t edges_ = 0;
};

enum class SparsityKind { Full, Epsilon, Knn, MutualKnn };

struct SparsityModel {
  SparsityKind kind = SparsityKind::Full;
  int K = 0;
};

/// The complete graph on all points.
SparseGraph build_complete(const DistanceModel& dm);

/// Mean distance of each point to its K-th nearest neighbor.
double epsilon_radius(const DistanceModel& dm, int K);

/// Edge (i,j) iff dist(i,j) <= epsilon_radius(dm, K).
SparseGraph build_epsilon(const DistanceModel& dm, int K);

/// Directed i->j iff j is among the K nearest neighbors of i; symmetrized by
/// AND (mutual) or OR (non-mutual).
SparseGraph build_knn(const DistanceModel& dm, int K, bool mutual);

SparseGraph build_sparse_graph(const DistanceModel& dm, const SparsityModel& model);

/// Maximal connected components, each sorted, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const SparseGraph& g);

bool is_connected(const SparseGraph& g);

/// Adds the minimum-weight inter-component edges that connect the graph:
/// a Kruskal pass over the component-contracted complete graph, where each
/// component pair is joined by its closest point pair.
SparseGraph aggregate_components(const SparseGraph& g, const DistanceModel& dm);

/// `i j weight` per line, 1-based, i < j.
void write_edge_list(const SparseGraph& g, std::ostream& out);

}  // namespace simgraph
