#pragma once

// Brute-force reference implementations used only by the tests.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

namespace oracle {

struct Edge {
  int i, j;
  double w;
};

inline bool spans(int n, const std::vector<Edge>& edges, const std::vector<int>& pick) {
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
  for (int e : pick) {
    const int a = find(edges[e].i), b = find(edges[e].j);
    if (a == b) return false;
    root[a] = b;
  }
  return true;  // n-1 acyclic edges span n nodes
}

/// Minimum total weight over all spanning trees, by enumerating every
/// (n-1)-subset of edges. Returns +inf when the graph is disconnected.
inline double min_spanning_weight(int n, const std::vector<Edge>& edges) {
  double best = std::numeric_limits<double>::infinity();
  if (n == 1) return 0.0;
  const int m = static_cast<int>(edges.size());
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == n - 1) {
      if (spans(n, edges, pick)) {
        double w = 0.0;
        for (int e : pick) w += edges[e].w;
        best = std::min(best, w);
      }
      return;
    }
    for (int e = start; e < m; ++e) {
      if (m - e < n - 1 - static_cast<int>(pick.size())) break;
      pick.push_back(e);
      rec(e + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix; eigenvalues in
/// nonincreasing order.
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Eigen::VectorXd d = a.diagonal();
  std::sort(d.data(), d.data() + n, std::greater<>());
  return d;
}

inline double entropy_of(const std::vector<int>& labels) {
  std::map<int, double> c;
  for (int l : labels) c[l] += 1.0;
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (const auto& [l, v] : c) h -= (v / n) * std::log(v / n);
  return h;
}

/// NMI from probabilities: I(A;B) / ((H(A)+H(B))/2).
inline double nmi(const std::vector<int>& a, const std::vector<int>& b) {
  const double n = static_cast<double>(a.size());
  std::map<int, double> pa, pb;
  std::map<std::pair<int, int>, double> pab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += 1.0 / n;
    pb[b[i]] += 1.0 / n;
    pab[{a[i], b[i]}] += 1.0 / n;
  }
  double mi = 0.0;
  for (const auto& [key, p] : pab) mi += p * std::log(p / (pa[key.first] * pb[key.second]));
  const double h = entropy_of(a) + entropy_of(b);
  if (h == 0.0) return 1.0;  // one cluster on both sides: the same partition
  return mi / (h / 2.0);
}

inline double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  double agree = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      total += 1.0;
      if ((a[i] == a[j]) == (b[i] == b[j])) agree += 1.0;
    }
  return total > 0 ? agree / total : 1.0;
}

inline double purity(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, std::map<int, int>> t;
  for (std::size_t i = 0; i < a.size(); ++i) ++t[a[i]][b[i]];
  double s = 0.0;
  for (const auto& [cl, row] : t) {
    int m = 0;
    for (const auto& [c, v] : row) m = std::max(m, v);
    s += m;
  }
  return s / static_cast<double>(a.size());
}

/// 1 - best accuracy over every injective map from obtained to target labels
/// (or target to obtained when there are fewer target classes).
inline double clustering_error(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> la(a), lb(b);
  std::sort(la.begin(), la.end());
  la.erase(std::unique(la.begin(), la.end()), la.end());
  std::sort(lb.begin(), lb.end());
  lb.erase(std::unique(lb.begin(), lb.end()), lb.end());
  const bool swap = la.size() > lb.size();
  const std::vector<int>& small = swap ? lb : la;
  const std::vector<int>& large = swap ? la : lb;
  const std::vector<int>& xs = swap ? b : a;
  const std::vector<int>& ys = swap ? a : b;
  std::vector<int> perm(large.size());
  std::iota(perm.begin(), perm.end(), 0);
  int best = 0;
  do {
    int hit = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto si = std::find(small.begin(), small.end(), xs[i]) - small.begin();
      if (large[perm[si]] == ys[i]) ++hit;
    }
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 1.0 - static_cast<double>(best) / static_cast<double>(xs.size());
}

}  // namespace oracle
