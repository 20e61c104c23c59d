#include "simgraph/scaling.hpp"

#include "simgraph/mst.hpp"

#include <algorithm>
#include <stdexcept>

namespace simgraph {

double scale_t(const SparseGraph& g) { return prim(g).max_edge; }

Eigen::VectorXd scale_s_local(const SparseGraph& g) {
  Eigen::VectorXd s(g.size());
  for (int i = 0; i < g.size(); ++i) {
    if (g.degree(i) == 0) throw GraphError("scale_s_local: node " + std::to_string(i) + " is isolated");
    double m = 0.0;
    for (const Edge& e : g.neighbors(i)) m = std::max(m, e.weight);
    s[i] = m;
  }
  return s;
}

double scale_s_mean(const Eigen::VectorXd& s_local) {
  if (s_local.size() == 0) throw std::invalid_argument("scale_s_mean: empty input");
  return s_local.mean();
}

double mean_pairwise_distance(const DistanceModel& dm) {
  const int n = dm.size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) sum += dm(i, j);
  }
  return sum / (0.5 * n * (n - 1.0));
}

double scale_full_global_mst(const DistanceModel& dm) {
  return std::min(prim(dm).max_edge, mean_pairwise_distance(dm));
}

Eigen::VectorXd scale_full_local_knn(const DistanceModel& dm) {
  const int K = k_rules(dm.size()).k_log;
  Eigen::VectorXd s(dm.size());
  for (int i = 0; i < dm.size(); ++i) s[i] = dm.kth_neighbor_distance(i, K);
  return s;
}

}  // namespace simgraph
