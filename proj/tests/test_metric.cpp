#include "simgraph/metric.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace simgraph;

TEST_CASE("distance model on a 3-4-5 triangle") {
  Eigen::MatrixXd p(3, 2);
  p << 0, 0, 3, 0, 0, 4;
  const DistanceModel dm(p);
  CHECK(dm(0, 1) == 3.0);
  CHECK(dm(0, 2) == 4.0);
  CHECK(dm(1, 2) == 5.0);
  CHECK(dm(2, 2) == 0.0);
  CHECK(dm.neighbors(0)[0] == 1);
  CHECK(dm.neighbors(2)[0] == 0);
  CHECK(dm.kth_neighbor_distance(1, 2) == 5.0);
  CHECK_THROWS_AS(dm.kth_neighbor_distance(1, 3), std::out_of_range);
  CHECK_THROWS_AS(dm.kth_neighbor_distance(1, 0), std::out_of_range);
}

TEST_CASE("neighbor ties are ordered by index") {
  Eigen::MatrixXd p(4, 1);
  p << 0, 1, -1, 2;
  const DistanceModel dm(p);
  const auto nn = dm.neighbors(0);
  CHECK(nn[0] == 1);
  CHECK(nn[1] == 2);
  CHECK(nn[2] == 3);
}

TEST_CASE("distance matrix is a metric") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  Eigen::MatrixXd p(25, 3);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = g(rng);
  const DistanceModel dm(p);
  for (int i = 0; i < 25; ++i) {
    CHECK(dm(i, i) == 0.0);
    for (int j = 0; j < 25; ++j) {
      CHECK(dm(i, j) == dm(j, i));
      CHECK(dm(i, j) == doctest::Approx((p.row(i) - p.row(j)).norm()));
      for (int l = 0; l < 25; ++l) CHECK(dm(i, l) <= dm(i, j) + dm(j, l) + 1e-12);
    }
    const auto nn = dm.neighbors(i);
    for (std::size_t a = 1; a < nn.size(); ++a) CHECK(dm(i, nn[a - 1]) <= dm(i, nn[a]));
  }
}

TEST_CASE("K rules") {
  CHECK(k_rules(150).k_log == 8);
  CHECK(k_rules(150).k_sqrt == 13);
  CHECK(k_rules(178).k_sqrt == 14);
  CHECK(k_rules(900).k_log == 10);
  CHECK(k_rules(900).k_sqrt == 31);
  CHECK(k_rules(1024).k_log == 11);
  CHECK(k_rules(3).k_log == 2);
  CHECK(k_rules(2).k_log == 1);
  CHECK(k_rules(2).k_sqrt == 1);
  for (int n = 2; n < 5000; ++n) {
    const KRules r = k_rules(n);
    CHECK(r.k_log == std::min(n - 1, 1 + static_cast<int>(std::floor(std::log2(n)))));
    CHECK(r.k_sqrt == std::min(n - 1, 1 + static_cast<int>(std::floor(std::sqrt(n)))));
  }
}
