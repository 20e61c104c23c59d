#pragma once

#include "simgraph/graph.hpp"
#include "simgraph/metric.hpp"

#include <Eigen/Dense>

namespace simgraph {

/// Scale parameter(s) of a Gaussian similarity.
struct ScaleSelection {
  enum class Kind { Unit, Global, Local };

  Kind kind = Kind::Unit;
  double sigma = 0.0;     // Global
  Eigen::VectorXd local;  // Local, one entry per point

  static ScaleSelection unit() { return {}; }
  static ScaleSelection global(double s) { return {Kind::Global, s, {}}; }
  static ScaleSelection per_point(Eigen::VectorXd s) { return {Kind::Local, 0.0, std::move(s)}; }
};

/// Largest edge weight of the minimum spanning tree of g (g connected).
double scale_t(const SparseGraph& g);

/// Largest incident edge weight at every node. Throws GraphError on an isolated node.
Eigen::VectorXd scale_s_local(const SparseGraph& g);

/// Arithmetic mean of the local scales.
double scale_s_mean(const Eigen::VectorXd& s_local);

/// Largest MST edge of the complete graph, capped at the mean pairwise distance.
double scale_full_global_mst(const DistanceModel& dm);

/// Distance of every point to its K_log-th nearest neighbor.
Eigen::VectorXd scale_full_local_knn(const DistanceModel& dm);

/// Mean of all pairwise distances over i < j.
double mean_pairwise_distance(const DistanceModel& dm);

}  // namespace simgraph
