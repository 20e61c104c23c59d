#pragma once

#include "simgraph/dataset.hpp"

#include <Eigen/Dense>

#include <span>
#include <stdexcept>

namespace simgraph {

/// Pairwise Euclidean distances of a point set (the weights of the complete
/// graph) together with, for every point, the other points ordered by
/// increasing distance. Ties are ordered by ascending point index.
class DistanceModel {
 public:
  explicit DistanceModel(const Eigen::MatrixXd& points);

  int size() const { return static_cast<int>(dist_.rows()); }
  double operator()(int i, int j) const { return dist_(i, j); }
  const Eigen::MatrixXd& matrix() const { return dist_; }

  /// Indices of the other n-1 points, nearest first.
  std::span<const int> neighbors(int i) const {
    return {nn_.data() + static_cast<std::ptrdiff_t>(i) * (size() - 1),
            static_cast<std::size_t>(size() - 1)};
  }

  /// Distance from point i to its K-th nearest neighbor, 1 <= K <= n-1.
  double kth_neighbor_distance(int i, int K) const;

 private:
  Eigen::MatrixXd dist_;
  std::vector<int> nn_;
};

inline DistanceModel build_distance_model(const Dataset& d) { return DistanceModel(d.points); }

/// K_log = 1 + floor(log2 n), K_sqrt = 1 + floor(sqrt n), both clamped to n-1.
struct KRules {
  int k_log;
  int k_sqrt;
};
KRules k_rules(int n);

}  // namespace simgraph
