#include "simgraph/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace simgraph {

namespace {

std::vector<int> dense_ids(std::span<const int> labels, int& count) {
  std::map<int, int> ids;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = ids.try_emplace(l, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  count = static_cast<int>(ids.size());
  return out;
}

double xlogx_ratio(double a, double b) { return a > 0.0 ? a * std::log(a / b) : 0.0; }

// Hungarian method for rows <= cols, minimizing cost. Returns the column of each row.
std::vector<int> hungarian_min(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

ContingencyTable ContingencyTable::build(std::span<const int> obtained, std::span<const int> target) {
  if (obtained.size() != target.size()) {
    throw std::invalid_argument("contingency table: labelings differ in length");
  }
  if (obtained.empty()) throw std::invalid_argument("contingency table: empty labelings");
  int rows = 0;
  int cols = 0;
  const std::vector<int> a = dense_ids(obtained, rows);
  const std::vector<int> b = dense_ids(target, cols);
  ContingencyTable t;
  t.counts = Eigen::MatrixXi::Zero(rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) ++t.counts(a[i], b[i]);
  t.row_sums = t.counts.rowwise().sum();
  t.col_sums = t.counts.colwise().sum().transpose();
  t.n = static_cast<int>(a.size());
  return t;
}

double nmi(const ContingencyTable& t) {
  const double n = t.n;
  // identical up to relabeling: square table with one nonzero per row and column
  if (t.counts.rows() == t.counts.cols() && (t.counts.array() > 0).count() == t.counts.rows()) {
    return 1.0;
  }
  double mi = 0.0;
  for (int i = 0; i < t.counts.rows(); ++i) {
    for (int j = 0; j < t.counts.cols(); ++j) {
      const double nij = t.counts(i, j);
      mi += xlogx_ratio(nij, static_cast<double>(t.row_sums[i]) * t.col_sums[j] / n);
    }
  }
  double h = 0.0;
  for (int i = 0; i < t.row_sums.size(); ++i) h -= xlogx_ratio(t.row_sums[i], n);
  for (int j = 0; j < t.col_sums.size(); ++j) h -= xlogx_ratio(t.col_sums[j], n);
  if (h <= 0.0) return 0.0;
  const double value = 2.0 * mi / h;
  return std::clamp(value, 0.0, 1.0);
}

double purity(const ContingencyTable& t) {
  return static_cast<double>(t.counts.rowwise().maxCoeff().sum()) / t.n;
}

double rand_index(const ContingencyTable& t) {
  if (t.n < 2) return 1.0;
  auto pairs = [](double x) { return x * (x - 1.0) / 2.0; };
  double both = 0.0;
  for (int i = 0; i < t.counts.rows(); ++i) {
    for (int j = 0; j < t.counts.cols(); ++j) both += pairs(t.counts(i, j));
  }
  double same_obtained = 0.0;
  for (int i = 0; i < t.row_sums.size(); ++i) same_obtained += pairs(t.row_sums[i]);
  double same_target = 0.0;
  for (int j = 0; j < t.col_sums.size(); ++j) same_target += pairs(t.col_sums[j]);
  const double total = pairs(t.n);
  const double agreements = total + 2.0 * both - same_obtained - same_target;
  return agreements / total;
}

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& profit) {
  if (profit.size() == 0) return std::vector<int>(static_cast<std::size_t>(profit.rows()), -1);
  const double top = profit.maxCoeff();
  if (profit.rows() <= profit.cols()) {
    return hungarian_min((top - profit.array()).matrix());
  }
  const std::vector<int> col_to_row = hungarian_min((top - profit.transpose().array()).matrix());
  std::vector<int> out(static_cast<std::size_t>(profit.rows()), -1);
  for (std::size_t c = 0; c < col_to_row.size(); ++c) out[col_to_row[c]] = static_cast<int>(c);
  return out;
}

double clustering_error(const ContingencyTable& t) {
  const Eigen::MatrixXd profit = t.counts.cast<double>();
  const std::vector<int> match = max_weight_assignment(profit);
  double matched = 0.0;
  for (std::size_t r = 0; r < match.size(); ++r) {
    if (match[r] >= 0) matched += profit(static_cast<Eigen::Index>(r), match[r]);
  }
  return 1.0 - matched / t.n;
}

double nmi(std::span<const int> obtained, std::span<const int> target) {
  return nmi(ContingencyTable::build(obtained, target));
}
double purity(std::span<const int> obtained, std::span<const int> target) {
  return purity(ContingencyTable::build(obtained, target));
}
double rand_index(std::span<const int> obtained, std::span<const int> target) {
  return rand_index(ContingencyTable::build(obtained, target));
}
double clustering_error(std::span<const int> obtained, std::span<const int> target) {
  return clustering_error(ContingencyTable::build(obtained, target));
}

IndexReport evaluate(std::span<const int> obtained, std::span<const int> target) {
  const ContingencyTable t = ContingencyTable::build(obtained, target);
  IndexReport r;
  r.nmi = nmi(t);
  r.purity = purity(t);
  r.rand = rand_index(t);
  r.ce = clustering_error(t);
  r.degenerate = t.counts.rows() == 1 && t.counts.cols() == 1;
  return r;
}

}  // namespace simgraph
