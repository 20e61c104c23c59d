#include "simgraph/harness.hpp"

#include "simgraph/metric.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace simgraph {

namespace fs = std::filesystem;

Dataset load_source(const DatasetSource& src) {
  Dataset d;
  switch (src.kind) {
    case DatasetSource::Kind::Iris: d = load_iris(src.path); break;
    case DatasetSource::Kind::Wine: d = load_wine(src.path); break;
    case DatasetSource::Kind::Vote: d = load_vote(src.path); break;
    case DatasetSource::Kind::Seeds: d = load_seeds(src.path); break;
    case DatasetSource::Kind::Rings:
      d = generate_rings(src.rings_n, src.rings_dispersion, src.rings_seed);
      break;
    case DatasetSource::Kind::Csv: {
      CsvSchema schema;
      schema.has_header = src.has_header;
      schema.label_column = src.label_column;
      schema.delimiter = src.delimiter;
      schema.whitespace = src.whitespace;
      schema.allow_duplicates = src.allow_duplicates;
      d = load_csv(src.path, schema);
      break;
    }
  }
  if (!src.name.empty()) d.name = src.name;
  if (src.k > 0) d.k = src.k;
  if (src.normalize_diameter) d = normalize_diameter(d);
  return d;
}

void ExperimentConfig::validate() const {
  if (datasets.empty()) throw ConfigError("config lists no datasets");
  if (methods.empty()) throw ConfigError("config selects no methods");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (!(eig_tol > 0.0)) throw ConfigError("eig_tol must be positive");
  std::map<std::string, int> seen;
  for (const DatasetSource& d : datasets) {
    if (d.name.empty()) throw ConfigError("dataset without a name");
    if (++seen[d.name] > 1) throw ConfigError("duplicate dataset name '" + d.name + "'");
    if (d.kind != DatasetSource::Kind::Rings && d.path.empty()) {
      throw ConfigError("dataset '" + d.name + "' needs a path");
    }
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(const std::string& v, int line) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) fail(line, "not a number: '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  fail(line, "not a boolean: '" + v + "'");
}

DatasetSource::Kind parse_kind(const std::string& v, int line) {
  using K = DatasetSource::Kind;
  static const std::map<std::string, K> kinds{{"csv", K::Csv},     {"iris", K::Iris},
                                              {"wine", K::Wine},   {"vote", K::Vote},
                                              {"seeds", K::Seeds}, {"rings", K::Rings}};
  const auto it = kinds.find(v);
  if (it == kinds.end()) fail(line, "unknown source '" + v + "'");
  return it->second;
}

std::vector<MethodSpec> parse_methods(const std::string& v, int line) {
  if (v == "all") return all_methods();
  std::vector<MethodSpec> out;
  std::stringstream ss(v);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    const auto spec = MethodSpec::parse(token);
    if (!spec) fail(line, "unknown method '" + token + "'");
    if (std::find(out.begin(), out.end(), *spec) == out.end()) out.push_back(*spec);
  }
  return out;
}

void set_dataset_key(DatasetSource& d, const std::string& key, const std::string& v, int line,
                     const fs::path& base_dir) {
  if (key == "set") {
    d.set = v;
  } else if (key == "source") {
    d.kind = parse_kind(v, line);
  } else if (key == "path") {
    fs::path p(v);
    d.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  } else if (key == "k") {
    d.k = parse_number<int>(v, line);
  } else if (key == "normalize_diameter") {
    d.normalize_diameter = parse_bool(v, line);
  } else if (key == "has_header") {
    d.has_header = parse_bool(v, line);
  } else if (key == "label_column") {
    d.label_column = parse_number<int>(v, line);
  } else if (key == "delimiter") {
    if (v == "whitespace") {
      d.whitespace = true;
    } else if (v == "tab") {
      d.delimiter = '\t';
    } else if (v.size() == 1) {
      d.delimiter = v[0];
    } else {
      fail(line, "delimiter must be one character, 'tab' or 'whitespace'");
    }
  } else if (key == "allow_duplicates") {
    d.allow_duplicates = parse_bool(v, line);
  } else if (key == "n") {
    d.rings_n = parse_number<int>(v, line);
  } else if (key == "dispersion") {
    d.rings_dispersion = parse_number<double>(v, line);
  } else if (key == "seed") {
    d.rings_seed = parse_number<std::uint64_t>(v, line);
  } else {
    fail(line, "unknown dataset key '" + key + "'");
  }
}

void set_global_key(ExperimentConfig& cfg, const std::string& key, const std::string& v, int line) {
  if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(v, line);
  } else if (key == "out_dir") {
    cfg.out_dir = v;
  } else if (key == "workers") {
    cfg.workers = parse_number<int>(v, line);
  } else if (key == "eig_tol") {
    cfg.eig_tol = parse_number<double>(v, line);
  } else if (key == "methods") {
    cfg.methods = parse_methods(v, line);
  } else if (key == "normalize_diameter") {
    cfg.normalize_diameter = parse_bool(v, line);
  } else if (key == "discretizer") {
    if (v == "rotation") {
      cfg.discretizer = Discretizer::Rotation;
    } else if (v == "kmeans") {
      cfg.discretizer = Discretizer::KMeans;
    } else {
      fail(line, "discretizer must be 'rotation' or 'kmeans'");
    }
  } else {
    fail(line, "unknown key '" + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const fs::path& base_dir) {
  ExperimentConfig cfg;
  DatasetSource* current = nullptr;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail(line, "unterminated section header");
      const std::string inner = trim(std::string_view(text).substr(1, text.size() - 2));
      if (inner.rfind("dataset", 0) != 0) fail(line, "unknown section '" + inner + "'");
      DatasetSource d;
      d.name = trim(std::string_view(inner).substr(7));
      if (d.name.empty()) fail(line, "dataset section needs a name");
      cfg.datasets.push_back(std::move(d));
      current = &cfg.datasets.back();
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (current) {
      set_dataset_key(*current, key, value, line, base_dir);
    } else {
      set_global_key(cfg, key, value, line);
    }
  }
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in, path.parent_path());
}

namespace {

struct PreparedDataset {
  const DatasetSource* source = nullptr;
  std::optional<Dataset> data;
  std::optional<DistanceModel> distances;
  std::string error;
};

RunRecord execute_run(const PreparedDataset& p, const MethodSpec& spec, const ExperimentConfig& cfg,
                      const RunObserver& observer, std::mutex& observer_mutex) {
  RunRecord rec;
  rec.set = p.source->set;
  rec.dataset = p.source->name;
  rec.method = spec;
  if (!p.data) {
    rec.failed = true;
    rec.error = p.error;
    return rec;
  }
  const Dataset& d = *p.data;
  rec.n = d.size();
  rec.k = d.k;

  const auto start = std::chrono::steady_clock::now();
  std::optional<BuildResult> build;
  std::optional<SpectralResult> spectral;
  try {
    build = build_similarity(spec, *p.distances);
    rec.K = build->diagnostics.K;
    rec.epsilon = build->diagnostics.epsilon;
    rec.aggregation_edges = build->diagnostics.aggregation_edges;
    rec.theta = sparsity_level(build->W);

    SpectralOptions opt;
    opt.eigen.tol = cfg.eig_tol;
    opt.eigen.seed = cfg.seed;
    opt.discretizer = cfg.discretizer;
    opt.seed = cfg.seed;
    spectral = spectral_cluster(build->W, d.k, opt);
    rec.nc = spectral->clustering.nc;
    rec.indices = evaluate(spectral->clustering.labels, d.labels);
    if (spectral->clustering.failed) {
      rec.failed = true;
      rec.error = "obtained " + std::to_string(rec.nc) + " clusters";
    }
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (observer) {
    std::lock_guard lock(observer_mutex);
    observer(RunArtifacts{d, rec, build ? &*build : nullptr, spectral ? &*spectral : nullptr});
  }
  return rec;
}

}  // namespace

EvaluationReport run_experiment(const ExperimentConfig& cfg, const RunObserver& observer) {
  cfg.validate();
  std::vector<PreparedDataset> prepared(cfg.datasets.size());
  for (std::size_t i = 0; i < cfg.datasets.size(); ++i) {
    PreparedDataset& p = prepared[i];
    p.source = &cfg.datasets[i];
    try {
      DatasetSource src = cfg.datasets[i];
      src.normalize_diameter = src.normalize_diameter || cfg.normalize_diameter;
      p.data = load_source(src);
      p.distances.emplace(p.data->points);
    } catch (const std::exception& e) {
      p.data.reset();
      p.error = std::string("dataset unavailable: ") + e.what();
    }
  }

  const std::size_t q = cfg.methods.size();
  const std::size_t total = prepared.size() * q;
  EvaluationReport report;
  report.runs.resize(total);
  std::atomic<std::size_t> next{0};
  std::mutex observer_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      report.runs[job] = execute_run(prepared[job / q], cfg.methods[job % q], cfg, observer, observer_mutex);
    }
  };
  const int threads = std::max(1, std::min<int>(cfg.workers, static_cast<int>(total)));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  report.sets = summarize(report.runs, cfg.methods);
  return report;
}

std::vector<int> rank_methods(const std::vector<double>& alphas) {
  std::vector<int> ranks(alphas.size());
  for (std::size_t r = 0; r < alphas.size(); ++r) {
    ranks[r] = 1 + static_cast<int>(std::count_if(alphas.begin(), alphas.end(),
                                                  [&](double a) { return a > alphas[r]; }));
  }
  return ranks;
}

std::vector<SetSummary> summarize(const std::vector<RunRecord>& runs, const std::vector<MethodSpec>& methods) {
  std::vector<SetSummary> sets;
  auto find_set = [&](const std::string& name) -> SetSummary& {
    for (SetSummary& s : sets) {
      if (s.set == name) return s;
    }
    sets.push_back({name, {}, {}});
    return sets.back();
  };
  for (const RunRecord& r : runs) {
    SetSummary& s = find_set(r.set);
    if (std::find(s.datasets.begin(), s.datasets.end(), r.dataset) == s.datasets.end()) {
      s.datasets.push_back(r.dataset);
    }
  }
  for (SetSummary& s : sets) {
    std::vector<double> alphas;
    for (const MethodSpec& m : methods) {
      MethodSummary ms;
      ms.method = m;
      double theta_sum = 0.0;
      int theta_count = 0;
      double alpha_sum = 0.0;
      int count = 0;
      for (const RunRecord& r : runs) {
        if (r.set != s.set || !(r.method == m)) continue;
        ++count;
        alpha_sum += r.alpha();
        if (r.failed) ++ms.failures;
        if (!std::isnan(r.theta)) {
          theta_sum += r.theta;
          ++theta_count;
        }
      }
      ms.alpha = count > 0 ? alpha_sum / count : 0.0;
      ms.theta = theta_count > 0 ? theta_sum / theta_count : std::nan("");
      alphas.push_back(ms.alpha);
      s.methods.push_back(ms);
    }
    const std::vector<int> ranks = rank_methods(alphas);
    for (std::size_t i = 0; i < ranks.size(); ++i) s.methods[i].rank = ranks[i];
  }
  return sets;
}

std::string format_double(double x) {
  if (std::isnan(x)) return {};
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string fixed(double x, int digits) {
  if (std::isnan(x)) return "n/a";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, digits);
  return std::string(buf, ptr);
}

std::string file_stem(const std::string& set) {
  std::string out;
  for (char c : set) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  return out;
}

std::ofstream open_output(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

void write_sparsity_table(const SetSummary& s, std::ostream& out) {
  out << "# Sparsity level, set " << s.set << "\n\n";
  out << "Datasets: ";
  for (std::size_t i = 0; i < s.datasets.size(); ++i) out << (i ? ", " : "") << s.datasets[i];
  out << "\n\n| Method | mean theta (%) |\n|---|---:|\n";
  for (const MethodSummary& m : s.methods) {
    out << "| " << m.method.name() << " | " << fixed(100.0 * m.theta, 1) << " |\n";
  }
  // family averages over the four variants
  out << "\n| Family | Klog (%) | Ksqrt (%) |\n|---|---:|---:|\n";
  for (Family f : {Family::E, Family::N, Family::M}) {
    double sum[2] = {0.0, 0.0};
    int cnt[2] = {0, 0};
    for (const MethodSummary& m : s.methods) {
      if (m.method.family != f || std::isnan(m.theta)) continue;
      const int idx = m.method.k_rule == KRule::Log ? 0 : 1;
      sum[idx] += m.theta;
      ++cnt[idx];
    }
    out << "| " << family_letter(f) << " | " << (cnt[0] ? fixed(100.0 * sum[0] / cnt[0], 1) : "n/a")
        << " | " << (cnt[1] ? fixed(100.0 * sum[1] / cnt[1], 1) : "n/a") << " |\n";
  }
}

void write_accuracy_table(const SetSummary& s, std::ostream& out) {
  out << "# Averaged NMI accuracy and rank, set " << s.set << "\n\n";
  out << "| Method | mean NMI | rank | failed runs |\n|---|---:|---:|---:|\n";
  for (const MethodSummary& m : s.methods) {
    out << "| " << m.method.name() << " | " << fixed(m.alpha, 3) << " | " << m.rank << " | " << m.failures
        << " |\n";
  }
}

void write_plot_data(const SetSummary& s, KRule rule, std::ostream& out) {
  out << "# set " << s.set << ", " << k_rule_name(rule) << ": mean NMI per variant\n";
  out << "# variant E N M\n";
  for (int v = 1; v <= 4; ++v) {
    out << v;
    for (Family f : {Family::E, Family::N, Family::M}) {
      const MethodSpec want{f, v, rule};
      auto it = std::find_if(s.methods.begin(), s.methods.end(),
                             [&](const MethodSummary& m) { return m.method == want; });
      out << ' ' << (it == s.methods.end() ? std::string("nan") : format_double(it->alpha));
    }
    out << '\n';
  }
}

}  // namespace

void write_runs_csv(const EvaluationReport& report, std::ostream& out) {
  out << "set,dataset,method,n,k,K,epsilon,theta,nmi,purity,rand,ce,nc,failed,degenerate,"
         "aggregation_edges,error\n";
  for (const RunRecord& r : report.runs) {
    out << csv_field(r.set) << ',' << csv_field(r.dataset) << ',' << r.method.name() << ',' << r.n << ','
        << r.k << ',' << r.K << ',' << format_double(r.epsilon) << ',' << format_double(r.theta) << ','
        << format_double(r.indices.nmi) << ',' << format_double(r.indices.purity) << ','
        << format_double(r.indices.rand) << ',' << format_double(r.indices.ce) << ',' << r.nc << ','
        << (r.failed ? 1 : 0) << ',' << (r.indices.degenerate ? 1 : 0) << ',' << r.aggregation_edges << ','
        << csv_field(r.error) << '\n';
  }
}

std::vector<fs::path> emit_reports(const EvaluationReport& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  {
    const fs::path p = dir / "runs.csv";
    std::ofstream out = open_output(p);
    write_runs_csv(report, out);
    written.push_back(p);
  }
  {
    const fs::path p = dir / "timings.csv";
    std::ofstream out = open_output(p);
    out << "set,dataset,method,seconds\n";
    for (const RunRecord& r : report.runs) {
      out << csv_field(r.set) << ',' << csv_field(r.dataset) << ',' << r.method.name() << ','
          << format_double(r.seconds) << '\n';
    }
    written.push_back(p);
  }
  for (const SetSummary& s : report.sets) {
    const std::string stem = file_stem(s.set);
    const fs::path sp = dir / ("sparsity_" + stem + ".md");
    const fs::path ap = dir / ("accuracy_" + stem + ".md");
    {
      std::ofstream out = open_output(sp);
      write_sparsity_table(s, out);
    }
    {
      std::ofstream out = open_output(ap);
      write_accuracy_table(s, out);
    }
    written.push_back(sp);
    written.push_back(ap);
    for (KRule rule : {KRule::Log, KRule::Sqrt}) {
      const fs::path pp = dir / ("accuracy_" + stem + "_" + std::string(k_rule_name(rule)) + ".dat");
      std::ofstream out = open_output(pp);
      write_plot_data(s, rule, out);
      written.push_back(pp);
    }
  }
  return written;
}

}  // namespace simgraph
