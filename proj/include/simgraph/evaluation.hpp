#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <vector>

namespace simgraph {

/// Cross-tabulation of two labelings of the same n objects. Rows index the
/// obtained clusters, columns the target classes, both in order of first
/// appearance of the label.
struct ContingencyTable {
  Eigen::MatrixXi counts;
  Eigen::VectorXi row_sums;
  Eigen::VectorXi col_sums;
  int n = 0;

  static ContingencyTable build(std::span<const int> obtained, std::span<const int> target);
};

/// Arithmetic-mean normalized mutual information, natural log. When both
/// sides consist of a single cluster the entropies vanish; the value is then
/// 1 if the partitions are identical and 0 otherwise.
double nmi(const ContingencyTable& t);
double purity(const ContingencyTable& t);
/// Fraction of the n(n-1)/2 object pairs on which the two partitions agree.
double rand_index(const ContingencyTable& t);
/// 1 minus the accuracy of the best one-to-one matching of clusters to classes.
double clustering_error(const ContingencyTable& t);

double nmi(std::span<const int> obtained, std::span<const int> target);
double purity(std::span<const int> obtained, std::span<const int> target);
double rand_index(std::span<const int> obtained, std::span<const int> target);
double clustering_error(std::span<const int> obtained, std::span<const int> target);

/// Maximum-weight assignment of rows to columns of a nonnegative profit
/// matrix (rectangular allowed). Returns, for every row, the assigned column
/// or -1 when there are more rows than columns.
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& profit);

struct IndexReport {
  double nmi = 0.0;
  double purity = 0.0;
  double rand = 0.0;
  double ce = 1.0;
  bool degenerate = false;  // single cluster on both sides
};

IndexReport evaluate(std::span<const int> obtained, std::span<const int> target);

}  // namespace simgraph
