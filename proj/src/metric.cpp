#include "simgraph/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace simgraph {

DistanceModel::DistanceModel(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw std::invalid_argument("DistanceModel: need at least 2 points");
  dist_.setZero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (points.row(i) - points.row(j)).norm();
      dist_(i, j) = d;
      dist_(j, i) = d;
    }
  }

  const int m = static_cast<int>(n) - 1;
  nn_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    auto row = nn_.begin() + static_cast<std::ptrdiff_t>(i) * m;
    int pos = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i) row[pos++] = j;
    }
    std::sort(row, row + m, [&](int a, int b) {
      return dist_(i, a) != dist_(i, b) ? dist_(i, a) < dist_(i, b) : a < b;
    });
  }
}

double DistanceModel::kth_neighbor_distance(int i, int K) const {
  if (K < 1 || K > size() - 1) {
    throw std::out_of_range("kth_neighbor_distance: K=" + std::to_string(K) +
                            " outside 1.." + std::to_string(size() - 1));
  }
  return dist_(i, neighbors(i)[static_cast<std::size_t>(K - 1)]);
}

KRules k_rules(int n) {
  if (n < 2) throw std::invalid_argument("k_rules: n must be >= 2");
  const auto un = static_cast<unsigned>(n);
  const int log2n = static_cast<int>(std::bit_width(un)) - 1;
  int root = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (root * root > n) --root;
  while ((root + 1) * (root + 1) <= n) ++root;
  return {std::min(1 + log2n, n - 1), std::min(1 + root, n - 1)};
}

}  // namespace simgraph
