#pragma once

#include "simgraph/graph.hpp"
#include "simgraph/metric.hpp"
#include "simgraph/scaling.hpp"

#include <Eigen/SparseCore>

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace simgraph {

/// Sparse symmetric similarity matrix W, row-major so each row is the
/// adjacency list of a node.
using SimilarityMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

/// Entries below this threshold count as zero and are never stored.
inline constexpr double kMachineZero = 0x1p-52;

/// Sparsity model of a method: F uses the complete graph, E the epsilon-
/// neighbor graph, N the non-mutual and M the mutual K-nearest-neighbor graph.
enum class Family { F, E, N, M };

enum class KRule { Log, Sqrt };

/// One entry of the method catalog.
///
/// Dense family (F): variant 1 is the global Gaussian with the capped MST
/// scale, variant 2 the local Gaussian with K_log-th neighbor distances,
/// variant 3 the global Gaussian with the mean of those distances.
///
/// Sparse families (E, N, M): variant 1 is the unit similarity, 2 the global
/// Gaussian with the largest MST(graph) edge, 3 the local Gaussian with the
/// largest incident edge per node, 4 the global Gaussian with the mean of the
/// per-node largest incident edges. `k_rule` selects K for the sparsifier.
struct MethodSpec {
  Family family = Family::F;
  int variant = 1;
  KRule k_rule = KRule::Log;

  /// Canonical name, e.g. "F1", "E3_Klog", "M4_Ksqrt".
  std::string name() const;
  /// Accepts canonical names plus the short suffixes "_Kl" and "_Ks".
  static std::optional<MethodSpec> parse(std::string_view name);
  bool valid() const;

  friend bool operator==(const MethodSpec& a, const MethodSpec& b) {
    return a.family == b.family && a.variant == b.variant &&
           (a.family == Family::F || a.k_rule == b.k_rule);
  }
};

/// All 27 methods in table order: F1..F3, then E/N/M 1..4 for K_log, then for K_sqrt.
std::vector<MethodSpec> all_methods();

char family_letter(Family f);
std::string_view k_rule_name(KRule r);

inline double gaussian_similarity(double delta, double sigma) {
  if (delta == 0.0) return 1.0;
  if (sigma <= 0.0) return 0.0;
  return std::exp(-(delta * delta) / (2.0 * sigma * sigma));
}

inline double local_gaussian_similarity(double delta, double sigma_i, double sigma_j) {
  if (delta == 0.0) return 1.0;
  const double prod = sigma_i * sigma_j;
  if (prod <= 0.0) return 0.0;
  return std::exp(-(delta * delta) / (2.0 * prod));
}

struct BuildDiagnostics {
  int K = 0;                         // sparse families only
  double epsilon = std::nan("");     // E family only
  ScaleSelection scale;              // scale actually used
  std::size_t graph_edges = 0;       // undirected edges of the sparse graph (after repair)
  int aggregation_edges = 0;         // edges added to reconnect the graph
  std::size_t dropped_entries = 0;   // graph edges whose weight fell below kMachineZero
};

struct BuildResult {
  SimilarityMatrix W;
  BuildDiagnostics diagnostics;
  /// Sparse graph after connectivity repair; absent for the dense family.
  std::optional<SparseGraph> graph;
};

BuildResult build_similarity(const MethodSpec& spec, const DistanceModel& dm);

/// Fraction of the n^2 entries of W below kMachineZero.
double sparsity_level(const SimilarityMatrix& W);

/// `i j w` per stored entry, 1-based, sorted by (i, j).
void write_matrix(const SimilarityMatrix& W, std::ostream& out);

}  // namespace simgraph
