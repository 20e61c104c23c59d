#pragma once

#include "simgraph/similarity.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace simgraph {

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// L_N = D^{-1/2} W D^{-1/2}, with D the row sums of W. Stored with the
/// sparsity pattern of W; products cost O(nnz).
class NormalizedLaplacian {
 public:
  /// Throws SpectralError if some row of W sums to zero.
  explicit NormalizedLaplacian(const SimilarityMatrix& W);

  int size() const { return static_cast<int>(L_.rows()); }
  const SimilarityMatrix& matrix() const { return L_; }
  const Eigen::VectorXd& degrees() const { return degrees_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(L_); }

  template <typename Derived>
  auto operator*(const Eigen::MatrixBase<Derived>& x) const {
    return L_ * x;
  }

 private:
  SimilarityMatrix L_;
  Eigen::VectorXd degrees_;
};

enum class EigenMethod { Auto, Dense, Krylov };

struct EigenOptions {
  double tol = 1e-9;
  EigenMethod method = EigenMethod::Auto;
  /// Auto uses the dense solver up to this size.
  int dense_limit = 512;
  /// Krylov basis cap; 0 means n.
  int max_basis = 0;
  std::uint64_t seed = 0x5eed;
};

struct EigenPairs {
  Eigen::MatrixXd vectors;  // n x k, orthonormal columns
  Eigen::VectorXd values;   // nonincreasing
};

/// Eigenpairs of the k largest eigenvalues. Every pair satisfies
/// ||L u - lambda u|| <= tol or SpectralError is thrown.
EigenPairs top_k_eigenvectors(const NormalizedLaplacian& L, int k, const EigenOptions& opt = {});

/// Points of the spectral feature space, one unit-norm row per object.
struct Embedding {
  Eigen::MatrixXd Y;
  Eigen::VectorXd eigenvalues;
};

/// Divides each row by its Euclidean norm. Throws SpectralError on a zero row.
Embedding row_normalize(const Eigen::MatrixXd& U, Eigen::VectorXd eigenvalues = {});

struct ClusteringResult {
  std::vector<int> labels;  // 1..nc
  int nc = 0;
  bool failed = false;      // nc < k
};

struct DiscretizationTrace {
  std::vector<double> objective;  // ||X - Y R||_F^2 after each assignment step
  int iterations = 0;
};

/// Alternating minimization of ||X - Y R||_F over indicator matrices X and
/// rotations R. R starts from k mutually near-orthogonal rows of Y.
ClusteringResult discretize(const Embedding& emb, int k, DiscretizationTrace* trace = nullptr);

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
  double tol = 1e-9;
};

/// Lloyd iterations from k-means++ seeding, best of `restarts` runs.
ClusteringResult kmeans_discretize(const Embedding& emb, int k, std::uint64_t seed,
                                   const KMeansOptions& opt = {});

enum class Discretizer { Rotation, KMeans };

struct SpectralOptions {
  EigenOptions eigen;
  Discretizer discretizer = Discretizer::Rotation;
  std::uint64_t seed = 1;
};

struct SpectralResult {
  ClusteringResult clustering;
  Embedding embedding;
};

SpectralResult spectral_cluster(const SimilarityMatrix& W, int k, const SpectralOptions& opt = {});

/// Relabels arbitrary cluster ids to 1..nc in order of first appearance.
ClusteringResult compact_labels(const std::vector<int>& raw, int k);

}  // namespace simgraph
