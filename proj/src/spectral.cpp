#include "simgraph/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace simgraph {

NormalizedLaplacian::NormalizedLaplacian(const SimilarityMatrix& W) : L_(W) {
  const int n = static_cast<int>(W.rows());
  degrees_ = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < W.outerSize(); ++r) {
    for (SimilarityMatrix::InnerIterator it(W, r); it; ++it) degrees_[r] += it.value();
  }
  for (int i = 0; i < n; ++i) {
    if (!(degrees_[i] > 0.0)) {
      throw SpectralError("normalized Laplacian: node " + std::to_string(i) + " has zero degree");
    }
  }
  const Eigen::VectorXd inv_sqrt = degrees_.cwiseSqrt().cwiseInverse();
  for (int r = 0; r < L_.outerSize(); ++r) {
    for (SimilarityMatrix::InnerIterator it(L_, r); it; ++it) {
      it.valueRef() *= inv_sqrt[r] * inv_sqrt[it.col()];
    }
  }
}

namespace {

EigenPairs dense_top_k(const NormalizedLaplacian& L, int k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.dense());
  if (es.info() != Eigen::Success) throw SpectralError("dense eigensolver failed");
  EigenPairs out;
  out.vectors = es.eigenvectors().rightCols(k).rowwise().reverse();
  out.values = es.eigenvalues().tail(k).reverse();
  return out;
}

// Uniform in [-1, 1) from raw engine output, so the start block does not
// depend on the standard library's distribution implementations.
Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = static_cast<double>(rng() >> 11) * 0x1p-52 - 1.0;
  return v;
}

// Block Krylov subspace with full reorthogonalization and Rayleigh-Ritz
// extraction. Block size k lets repeated eigenvalues (one per connected
// component) be captured; a column that collapses during orthogonalization
// is replaced by a fresh random direction.
class KrylovSolver {
 public:
  KrylovSolver(const NormalizedLaplacian& L, int k, const EigenOptions& opt)
      : L_(L), n_(L.size()), k_(k), opt_(opt), rng_(opt.seed) {
    cap_ = opt.max_basis > 0 ? std::min(opt.max_basis, n_) : n_;
    cap_ = std::max(cap_, std::min(n_, k_));
  }

  EigenPairs solve() {
    Q_.resize(n_, std::min(cap_, std::max(4 * k_, 32)));
    LQ_.resize(n_, Q_.cols());
    for (int c = 0; c < k_; ++c) append(random_vector(n_, rng_));

    int next_check = std::min(cap_, std::max(2 * k_, 16));
    int block_start = 0;
    while (true) {
      const int block_end = m_;
      if (m_ >= next_check || m_ >= cap_) {
        EigenPairs pairs;
        if (ritz(pairs)) return pairs;
        if (m_ >= cap_) {
          throw SpectralError("Krylov eigensolver did not reach tolerance within " +
                              std::to_string(cap_) + " basis vectors");
        }
        next_check = std::min(cap_, std::max(next_check + k_, static_cast<int>(1.25 * m_)));
      }
      for (int c = block_start; c < block_end && m_ < cap_; ++c) append(LQ_.col(c));
      block_start = block_end;
    }
  }

 private:
  void append(Eigen::VectorXd w) {
    const double original = w.norm();
    auto orthogonalize = [&](Eigen::VectorXd& v) {
      for (int pass = 0; pass < 2; ++pass) {
        v -= Q_.leftCols(m_) * (Q_.leftCols(m_).transpose() * v);
      }
    };
    orthogonalize(w);
    double norm = w.norm();
    int attempts = 0;
    while (!(norm > 1e-10 * std::max(original, 1.0))) {
      if (++attempts > 8) throw SpectralError("Krylov eigensolver: cannot extend basis");
      w = random_vector(n_, rng_);
      orthogonalize(w);
      norm = w.norm();
    }
    if (m_ == Q_.cols()) {
      const Eigen::Index grow = std::min<Eigen::Index>(cap_, 2 * Q_.cols());
      Q_.conservativeResize(Eigen::NoChange, grow);
      LQ_.conservativeResize(Eigen::NoChange, grow);
    }
    Q_.col(m_) = w / norm;
    LQ_.col(m_) = L_ * Q_.col(m_);
    ++m_;
  }

  bool ritz(EigenPairs& out) {
    const auto Q = Q_.leftCols(m_);
    const auto LQ = LQ_.leftCols(m_);
    Eigen::MatrixXd H = Q.transpose() * LQ;
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw SpectralError("projected eigenproblem failed");
    const Eigen::MatrixXd S = es.eigenvectors().rightCols(k_).rowwise().reverse();
    out.values = es.eigenvalues().tail(k_).reverse();
    out.vectors = Q * S;
    const Eigen::MatrixXd residual = LQ * S - out.vectors * out.values.asDiagonal();
    return residual.colwise().norm().maxCoeff() <= opt_.tol;
  }

  const NormalizedLaplacian& L_;
  int n_;
  int k_;
  EigenOptions opt_;
  std::mt19937_64 rng_;
  int cap_ = 0;
  int m_ = 0;
  Eigen::MatrixXd Q_;
  Eigen::MatrixXd LQ_;
};

}  // namespace

EigenPairs top_k_eigenvectors(const NormalizedLaplacian& L, int k, const EigenOptions& opt) {
  const int n = L.size();
  if (k < 1 || k > n) throw SpectralError("top_k_eigenvectors: k out of range");
  const bool dense = opt.method == EigenMethod::Dense ||
                     (opt.method == EigenMethod::Auto && n <= opt.dense_limit);
  EigenPairs out = dense ? dense_top_k(L, k) : KrylovSolver(L, k, opt).solve();

  const Eigen::MatrixXd residual = L * out.vectors - out.vectors * out.values.asDiagonal();
  const double worst = residual.colwise().norm().maxCoeff();
  if (worst > opt.tol) {
    throw SpectralError("eigenpair residual " + std::to_string(worst) + " exceeds tolerance");
  }
  return out;
}

Embedding row_normalize(const Eigen::MatrixXd& U, Eigen::VectorXd eigenvalues) {
  Embedding emb;
  emb.Y = U;
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    const double norm = U.row(i).norm();
    if (norm == 0.0) throw SpectralError("row_normalize: zero row " + std::to_string(i));
    emb.Y.row(i) /= norm;
  }
  emb.eigenvalues = std::move(eigenvalues);
  return emb;
}

ClusteringResult compact_labels(const std::vector<int>& raw, int k) {
  ClusteringResult out;
  std::map<int, int> ids;
  out.labels.reserve(raw.size());
  for (int r : raw) {
    auto [it, inserted] = ids.try_emplace(r, static_cast<int>(ids.size()) + 1);
    out.labels.push_back(it->second);
  }
  out.nc = static_cast<int>(ids.size());
  out.failed = out.nc < k;
  return out;
}

namespace {

// Row-wise argmax as an indicator matrix; ties go to the lower column.
Eigen::MatrixXd nearest_indicator(const Eigen::MatrixXd& YR, std::vector<int>& assignment) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(YR.rows(), YR.cols());
  assignment.resize(static_cast<std::size_t>(YR.rows()));
  for (Eigen::Index i = 0; i < YR.rows(); ++i) {
    Eigen::Index c = 0;
    YR.row(i).maxCoeff(&c);
    X(i, c) = 1.0;
    assignment[static_cast<std::size_t>(i)] = static_cast<int>(c);
  }
  return X;
}

Eigen::MatrixXd initial_rotation(const Eigen::MatrixXd& Y, int k) {
  const Eigen::Index n = Y.rows();
  Eigen::MatrixXd R(k, k);
  const Eigen::RowVectorXd mean = Y.colwise().mean();
  Eigen::Index first = 0;
  (Y.rowwise() - mean).rowwise().squaredNorm().maxCoeff(&first);
  R.col(0) = Y.row(first).transpose();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int j = 1; j < k; ++j) {
    c += (Y * R.col(j - 1)).cwiseAbs();
    Eigen::Index next = 0;
    c.minCoeff(&next);
    R.col(j) = Y.row(next).transpose();
  }
  // nearest orthogonal matrix
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

ClusteringResult discretize(const Embedding& emb, int k, DiscretizationTrace* trace) {
  const Eigen::MatrixXd& Y = emb.Y;
  const auto n = static_cast<std::size_t>(Y.rows());
  if (k == 1) return compact_labels(std::vector<int>(n, 0), 1);
  if (k < 1 || Y.cols() != k) throw SpectralError("discretize: embedding must have k columns");

  Eigen::MatrixXd R = initial_rotation(Y, k);
  std::vector<int> assignment;
  Eigen::MatrixXd X = nearest_indicator(Y * R, assignment);
  double objective = (X - Y * R).squaredNorm();
  if (trace) trace->objective = {objective};

  constexpr int max_iterations = 100;
  constexpr double min_improvement = 1e-10;
  int it = 0;
  for (; it < max_iterations; ++it) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X.transpose() * Y, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd R_next = svd.matrixV() * svd.matrixU().transpose();
    std::vector<int> next_assignment;
    Eigen::MatrixXd X_next = nearest_indicator(Y * R_next, next_assignment);
    const double next_objective = (X_next - Y * R_next).squaredNorm();
    if (trace) trace->objective.push_back(next_objective);
    const double improvement = objective - next_objective;
    if (next_objective <= objective) {
      R = R_next;
      X = std::move(X_next);
      assignment = std::move(next_assignment);
      objective = next_objective;
    }
    if (improvement < min_improvement) {
      ++it;
      break;
    }
  }
  if (trace) trace->iterations = it;
  return compact_labels(assignment, k);
}

ClusteringResult kmeans_discretize(const Embedding& emb, int k, std::uint64_t seed, const KMeansOptions& opt) {
  const Eigen::MatrixXd& Y = emb.Y;
  const Eigen::Index n = Y.rows();
  if (k < 1 || k > n) throw SpectralError("kmeans: k out of range");

  double best_inertia = std::numeric_limits<double>::infinity();
  std::vector<int> best;
  for (int restart = 0; restart < opt.restarts; ++restart) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(restart));
    Eigen::MatrixXd centers(k, Y.cols());
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    centers.row(0) = Y.row(pick(rng));
    Eigen::VectorXd d2 = (Y.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
      const double total = d2.sum();
      Eigen::Index chosen = 0;
      if (total > 0.0) {
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng);
        for (chosen = 0; chosen < n - 1 && target >= d2[chosen]; ++chosen) target -= d2[chosen];
      } else {
        chosen = pick(rng);
      }
      centers.row(c) = Y.row(chosen);
      d2 = d2.cwiseMin((Y.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }

    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    double inertia = 0.0;
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
      inertia = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index c = 0;
        inertia += (centers.rowwise() - Y.row(i)).rowwise().squaredNorm().minCoeff(&c);
        assign[static_cast<std::size_t>(i)] = static_cast<int>(c);
      }
      Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, Y.cols());
      Eigen::VectorXd count = Eigen::VectorXd::Zero(k);
      for (Eigen::Index i = 0; i < n; ++i) {
        next.row(assign[static_cast<std::size_t>(i)]) += Y.row(i);
        count[assign[static_cast<std::size_t>(i)]] += 1.0;
      }
      for (int c = 0; c < k; ++c) {
        if (count[c] > 0.0) {
          next.row(c) /= count[c];
        } else {
          next.row(c) = centers.row(c);
        }
      }
      const double shift = (next - centers).rowwise().norm().maxCoeff();
      centers = next;
      if (shift < opt.tol) break;
    }
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best = assign;
    }
  }
  return compact_labels(best, k);
}

SpectralResult spectral_cluster(const SimilarityMatrix& W, int k, const SpectralOptions& opt) {
  if (k < 1 || k > W.rows()) throw SpectralError("spectral_cluster: k out of range");
  const NormalizedLaplacian L(W);
  EigenPairs pairs = top_k_eigenvectors(L, k, opt.eigen);
  SpectralResult out;
  out.embedding = row_normalize(pairs.vectors, std::move(pairs.values));
  out.clustering = opt.discretizer == Discretizer::Rotation
                       ? discretize(out.embedding, k)
                       : kmeans_discretize(out.embedding, k, opt.seed);
  return out;
}

}  // namespace simgraph
