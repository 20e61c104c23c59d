#include "simgraph/similarity.hpp"

#include <algorithm>
#include <charconv>

namespace simgraph {

char family_letter(Family f) {
  switch (f) {
    case Family::F: return 'F';
    case Family::E: return 'E';
    case Family::N: return 'N';
    case Family::M: return 'M';
  }
  return '?';
}

std::string_view k_rule_name(KRule r) { return r == KRule::Log ? "Klog" : "Ksqrt"; }

bool MethodSpec::valid() const {
  return family == Family::F ? (variant >= 1 && variant <= 3) : (variant >= 1 && variant <= 4);
}

std::string MethodSpec::name() const {
  std::string s{family_letter(family)};
  s += static_cast<char>('0' + variant);
  if (family != Family::F) {
    s += '_';
    s += k_rule_name(k_rule);
  }
  return s;
}

std::optional<MethodSpec> MethodSpec::parse(std::string_view name) {
  if (name.size() < 2) return std::nullopt;
  MethodSpec spec;
  switch (name[0]) {
    case 'F': spec.family = Family::F; break;
    case 'E': spec.family = Family::E; break;
    case 'N': spec.family = Family::N; break;
    case 'M': spec.family = Family::M; break;
    default: return std::nullopt;
  }
  if (name[1] < '1' || name[1] > '9') return std::nullopt;
  spec.variant = name[1] - '0';
  const auto rest = name.substr(2);
  if (spec.family == Family::F) {
    if (!rest.empty()) return std::nullopt;
  } else if (rest == "_Klog" || rest == "_Kl") {
    spec.k_rule = KRule::Log;
  } else if (rest == "_Ksqrt" || rest == "_Ks") {
    spec.k_rule = KRule::Sqrt;
  } else {
    return std::nullopt;
  }
  if (!spec.valid()) return std::nullopt;
  return spec;
}

std::vector<MethodSpec> all_methods() {
  std::vector<MethodSpec> out;
  for (int v = 1; v <= 3; ++v) out.push_back({Family::F, v, KRule::Log});
  for (KRule rule : {KRule::Log, KRule::Sqrt}) {
    for (Family f : {Family::E, Family::N, Family::M}) {
      for (int v = 1; v <= 4; ++v) out.push_back({f, v, rule});
    }
  }
  return out;
}

namespace {

using Triplet = Eigen::Triplet<double, int>;

SimilarityMatrix assemble(int n, std::vector<Triplet>& triplets) {
  SimilarityMatrix W(n, n);
  W.setFromTriplets(triplets.begin(), triplets.end());
  W.makeCompressed();
  return W;
}

template <typename Weight>
void push_pair(std::vector<Triplet>& triplets, std::size_t& dropped, int i, int j, Weight&& weight) {
  const double w = weight();
  if (w < kMachineZero) {
    ++dropped;
    return;
  }
  triplets.emplace_back(i, j, w);
  triplets.emplace_back(j, i, w);
}

BuildResult build_dense(const MethodSpec& spec, const DistanceModel& dm) {
  const int n = dm.size();
  BuildResult out;
  auto& diag = out.diagnostics;
  switch (spec.variant) {
    case 1: diag.scale = ScaleSelection::global(scale_full_global_mst(dm)); break;
    case 2: diag.scale = ScaleSelection::per_point(scale_full_local_knn(dm)); break;
    case 3: diag.scale = ScaleSelection::global(scale_s_mean(scale_full_local_knn(dm))); break;
    default: throw std::invalid_argument("invalid dense variant " + spec.name());
  }
  diag.graph_edges = static_cast<std::size_t>(n) * (n - 1) / 2;

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * (n - 1));
  const ScaleSelection& sc = diag.scale;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = dm(i, j);
      if (sc.kind == ScaleSelection::Kind::Local) {
        push_pair(triplets, diag.dropped_entries, i, j,
                  [&] { return local_gaussian_similarity(d, sc.local[i], sc.local[j]); });
      } else {
        push_pair(triplets, diag.dropped_entries, i, j, [&] { return gaussian_similarity(d, sc.sigma); });
      }
    }
  }
  out.W = assemble(n, triplets);
  return out;
}

BuildResult build_sparse(const MethodSpec& spec, const DistanceModel& dm) {
  const int n = dm.size();
  const KRules rules = k_rules(n);
  BuildResult out;
  auto& diag = out.diagnostics;
  diag.K = spec.k_rule == KRule::Log ? rules.k_log : rules.k_sqrt;

  SparsityModel model{SparsityKind::Epsilon, diag.K};
  if (spec.family == Family::N) model.kind = SparsityKind::Knn;
  if (spec.family == Family::M) model.kind = SparsityKind::MutualKnn;
  if (spec.family == Family::E) diag.epsilon = epsilon_radius(dm, diag.K);

  SparseGraph raw = build_sparse_graph(dm, model);
  SparseGraph g = aggregate_components(raw, dm);
  diag.aggregation_edges = static_cast<int>(g.edge_count() - raw.edge_count());
  diag.graph_edges = g.edge_count();

  switch (spec.variant) {
    case 1: diag.scale = ScaleSelection::unit(); break;
    case 2: diag.scale = ScaleSelection::global(scale_t(g)); break;
    case 3: diag.scale = ScaleSelection::per_point(scale_s_local(g)); break;
    case 4: diag.scale = ScaleSelection::global(scale_s_mean(scale_s_local(g))); break;
    default: throw std::invalid_argument("invalid sparse variant " + spec.name());
  }

  std::vector<Triplet> triplets;
  triplets.reserve(2 * g.edge_count());
  const ScaleSelection& sc = diag.scale;
  for (const WeightedEdge& e : g.edges()) {
    switch (sc.kind) {
      case ScaleSelection::Kind::Unit:
        push_pair(triplets, diag.dropped_entries, e.i, e.j, [] { return 1.0; });
        break;
      case ScaleSelection::Kind::Global:
        push_pair(triplets, diag.dropped_entries, e.i, e.j,
                  [&] { return gaussian_similarity(e.weight, sc.sigma); });
        break;
      case ScaleSelection::Kind::Local:
        push_pair(triplets, diag.dropped_entries, e.i, e.j,
                  [&] { return local_gaussian_similarity(e.weight, sc.local[e.i], sc.local[e.j]); });
        break;
    }
  }
  out.W = assemble(n, triplets);
  out.graph = std::move(g);
  return out;
}

}  // namespace

BuildResult build_similarity(const MethodSpec& spec, const DistanceModel& dm) {
  if (!spec.valid()) throw std::invalid_argument("invalid method " + spec.name());
  return spec.family == Family::F ? build_dense(spec, dm) : build_sparse(spec, dm);
}

double sparsity_level(const SimilarityMatrix& W) {
  const double n2 = static_cast<double>(W.rows()) * static_cast<double>(W.cols());
  if (n2 == 0.0) return 1.0;
  Eigen::Index stored = 0;
  for (int r = 0; r < W.outerSize(); ++r) {
    for (SimilarityMatrix::InnerIterator it(W, r); it; ++it) {
      if (it.value() >= kMachineZero) ++stored;
    }
  }
  return (n2 - static_cast<double>(stored)) / n2;
}

void write_matrix(const SimilarityMatrix& W, std::ostream& out) {
  char buf[64];
  for (int r = 0; r < W.outerSize(); ++r) {
    for (SimilarityMatrix::InnerIterator it(W, r); it; ++it) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, it.value());
      out << r + 1 << ' ' << it.col() + 1 << ' ';
      out.write(buf, ptr - buf);
      out << '\n';
    }
  }
}

}  // namespace simgraph
