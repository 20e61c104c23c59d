#include "simgraph/graph.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace simgraph;

namespace {

DistanceModel line(std::initializer_list<double> xs) {
  Eigen::MatrixXd p(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) p(i++, 0) = x;
  return DistanceModel(p);
}

std::vector<std::pair<int, int>> pairs(const SparseGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.i, e.j);
  return out;
}

Eigen::MatrixXd random_points(int n, int dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd p(n, dims);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = g(rng);
  return p;
}

bool symmetric_and_loop_free(const SparseGraph& g) {
  for (int i = 0; i < g.size(); ++i) {
    for (const Edge& e : g.neighbors(i)) {
      if (e.to == i || !(e.weight > 0.0)) return false;
      bool back = false;
      for (const Edge& f : g.neighbors(e.to)) back |= f.to == i && f.weight == e.weight;
      if (!back) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("adjacency lists stay sorted and symmetric") {
  SparseGraph g(4);
  g.add_edge(2, 0, 1.5);
  g.add_edge(0, 3, 2.0);
  g.add_edge(0, 1, 0.5);
  g.add_edge(1, 0, 0.5);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(0) == 3);
  CHECK(g.neighbors(0)[0].to == 1);
  CHECK(g.neighbors(0)[2].to == 3);
  CHECK(g.has_edge(3, 0));
  CHECK_FALSE(g.has_edge(1, 2));
  CHECK_THROWS_AS(g.add_edge(2, 2, 1.0), GraphError);
  CHECK(symmetric_and_loop_free(g));
}

TEST_CASE("epsilon graph on {0,1,3}") {
  const DistanceModel dm = line({0, 1, 3});
  CHECK(epsilon_radius(dm, 1) == doctest::Approx(4.0 / 3.0));
  const SparseGraph g = build_epsilon(dm, 1);
  CHECK(pairs(g) == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("epsilon graph with equal distances is complete") {
  Eigen::MatrixXd p(3, 2);
  p << 0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2;
  const DistanceModel dm(p);
  CHECK(build_epsilon(dm, 2).edge_count() == 3);
}

TEST_CASE("epsilon graph of two far pairs is disconnected") {
  const DistanceModel dm = line({0, 1, 100, 101});
  const SparseGraph g = build_epsilon(dm, 1);
  CHECK_FALSE(is_connected(g));
  CHECK(connected_components(g).size() == 2);
}

TEST_CASE("kNN graphs on {0,1,3}") {
  const DistanceModel dm = line({0, 1, 3});
  CHECK(pairs(build_knn(dm, 1, true)) == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(pairs(build_knn(dm, 1, false)) == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(build_knn(dm, 2, true).edge_count() == 3);
  CHECK(build_knn(dm, 2, false).edge_count() == 3);
}

TEST_CASE("connected components") {
  const DistanceModel dm = line({0, 1, 2, 3});
  CHECK(connected_components(build_complete(dm)).size() == 1);
  CHECK(connected_components(SparseGraph(3)).size() == 3);
  SparseGraph g(4);
  g.add_edge(2, 3, 1.0);
  g.add_edge(0, 1, 1.0);
  const auto cc = connected_components(g);
  CHECK(cc == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
}

TEST_CASE("aggregation") {
  SUBCASE("connected graph is unchanged") {
    const DistanceModel dm = line({0, 1, 3});
    const SparseGraph g = build_knn(dm, 1, false);
    CHECK(pairs(aggregate_components(g, dm)) == pairs(g));
  }
  SUBCASE("two singletons get joined") {
    const DistanceModel dm = line({0, 5});
    CHECK(pairs(aggregate_components(SparseGraph(2), dm)) == std::vector<std::pair<int, int>>{{0, 1}});
  }
  SUBCASE("three components on a line join through the middle") {
    const DistanceModel dm = line({0, 10, 25});
    const SparseGraph g = aggregate_components(SparseGraph(3), dm);
    CHECK(pairs(g) == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  }
  SUBCASE("closest point pair joins two clusters") {
    const DistanceModel dm = line({0, 1, 2, 10, 11, 12});
    SparseGraph g(6);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(3, 4, 1);
    g.add_edge(4, 5, 1);
    const SparseGraph a = aggregate_components(g, dm);
    CHECK(a.edge_count() == 5);
    CHECK(a.has_edge(2, 3));
  }
}

TEST_CASE("builder properties on random point clouds") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 10 + static_cast<int>(seed) * 3;
    const DistanceModel dm(random_points(n, 2 + static_cast<int>(seed % 3), seed));
    for (int K = 1; K < std::min(n - 1, 9); ++K) {
      const SparseGraph m = build_knn(dm, K, true);
      const SparseGraph nm = build_knn(dm, K, false);
      const SparseGraph nm1 = build_knn(dm, K + 1, false);
      const SparseGraph m1 = build_knn(dm, K + 1, true);
      const SparseGraph e = build_epsilon(dm, K);
      for (const SparseGraph* g : {&m, &nm, &e}) CHECK(symmetric_and_loop_free(*g));
      for (const auto& ed : m.edges()) {
        CHECK(nm.has_edge(ed.i, ed.j));
        CHECK(m1.has_edge(ed.i, ed.j));
      }
      for (const auto& ed : nm.edges()) CHECK(nm1.has_edge(ed.i, ed.j));
      CHECK(nm.edge_count() <= static_cast<std::size_t>(K) * n);
      CHECK(m.edge_count() <= nm.edge_count());
      for (int i = 0; i < n; ++i) CHECK(nm.degree(i) >= K);

      for (const SparseGraph* g : {&m, &nm, &e}) {
        const auto before = connected_components(*g).size();
        const SparseGraph a = aggregate_components(*g, dm);
        CHECK(is_connected(a));
        CHECK(a.edge_count() - g->edge_count() == before - 1);
        for (const auto& ed : g->edges()) CHECK(a.has_edge(ed.i, ed.j));
      }
    }
  }
}

TEST_CASE("edge list output is 1-based") {
  SparseGraph g(3);
  g.add_edge(0, 2, 0.25);
  std::ostringstream out;
  write_edge_list(g, out);
  CHECK(out.str() == "1 3 0.25\n");
}
