#include "simgraph/evaluation.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace simgraph;

namespace {
using L = std::vector<int>;
const L target{1, 1, 2, 2};
}  // namespace

TEST_CASE("contingency table") {
  const auto t = ContingencyTable::build(L{1, 2, 2, 2}, target);
  CHECK(t.n == 4);
  CHECK(t.counts == (Eigen::Matrix2i() << 1, 0, 1, 2).finished());
  CHECK(t.row_sums == Eigen::Vector2i(1, 3));
  CHECK(t.col_sums == Eigen::Vector2i(2, 2));
  CHECK_THROWS_AS(ContingencyTable::build(L{1, 2}, target), std::invalid_argument);
}

TEST_CASE("identical partitions hit the extremes exactly") {
  const IndexReport r = evaluate(target, target);
  CHECK(r.nmi == 1.0);
  CHECK(r.purity == 1.0);
  CHECK(r.rand == 1.0);
  CHECK(r.ce == 0.0);
  CHECK(evaluate(L{5, 5, 3, 3}, target).ce == 0.0);
  CHECK(evaluate(L{5, 5, 3, 3}, target).nmi == 1.0);
}

TEST_CASE("NMI examples") {
  CHECK(nmi(L{1, 2, 1, 2}, target) == doctest::Approx(0.0).epsilon(1e-15));
  // table (1,0;1,2): MI and entropies evaluated by hand
  const double mi = 0.25 * std::log(0.25 / (0.25 * 0.5)) + 0.25 * std::log(0.25 / (0.75 * 0.5)) +
                    0.5 * std::log(0.5 / (0.75 * 0.5));
  const double h_obt = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
  const double h_tar = std::log(2.0);
  CHECK(nmi(L{1, 2, 2, 2}, target) == doctest::Approx(2 * mi / (h_obt + h_tar)).epsilon(1e-14));
}

TEST_CASE("single cluster on both sides") {
  const IndexReport r = evaluate(L{1, 1, 1}, L{4, 4, 4});
  CHECK(r.nmi == 1.0);
  CHECK(r.degenerate);
  CHECK(nmi(L{1, 1, 1, 1}, target) == 0.0);
}

TEST_CASE("purity examples") {
  CHECK(purity(L{1, 1, 1, 1}, target) == 0.5);
  CHECK(purity(L{1, 2, 2, 2}, target) == 0.75);
}

TEST_CASE("Rand examples") {
  CHECK(rand_index(L{1, 2, 1, 2}, target) == doctest::Approx(2.0 / 6.0));
  CHECK(rand_index(L{1, 2, 3, 4}, L{1, 1, 1, 1}) == 0.0);
}

TEST_CASE("clustering error examples") {
  CHECK(clustering_error(L{1, 2, 2, 2}, target) == 0.25);
  CHECK(clustering_error(L{2, 2, 1, 1}, target) == 0.0);
}

TEST_CASE("assignment handles rectangular profits") {
  Eigen::MatrixXd p(3, 2);
  p << 1, 5, 4, 1, 3, 3;
  const auto m = max_weight_assignment(p);
  CHECK(m == std::vector<int>{1, 0, -1});
  const auto t = max_weight_assignment(p.transpose());
  CHECK(t == std::vector<int>{1, 0});
}

TEST_CASE("indices match brute-force oracles on random partitions") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> size(1, 10), clusters(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = size(rng);
    std::uniform_int_distribution<int> la(1, clusters(rng)), lb(1, clusters(rng));
    L a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = la(rng) * 10;  // arbitrary label values
      b[i] = lb(rng);
    }
    const IndexReport r = evaluate(a, b);
    CHECK(std::abs(r.nmi - oracle::nmi(a, b)) <= 1e-12);
    CHECK(std::abs(r.purity - oracle::purity(a, b)) <= 1e-12);
    CHECK(std::abs(r.rand - oracle::rand_index(a, b)) <= 1e-12);
    CHECK(std::abs(r.ce - oracle::clustering_error(a, b)) <= 1e-12);
    // symmetry of NMI and Rand, invariance to relabeling
    CHECK(std::abs(nmi(b, a) - r.nmi) <= 1e-12);
    CHECK(std::abs(rand_index(b, a) - r.rand) <= 1e-12);
    L c = a;
    for (int& x : c) x = 100 - x;
    CHECK(std::abs(nmi(c, b) - r.nmi) <= 1e-12);
    CHECK(clustering_error(c, b) == r.ce);
  }
}
