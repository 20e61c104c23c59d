#pragma once

#include "simgraph/dataset.hpp"
#include "simgraph/evaluation.hpp"
#include "simgraph/similarity.hpp"
#include "simgraph/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace simgraph {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where the points of one dataset come from.
struct DatasetSource {
  enum class Kind { Csv, Iris, Wine, Vote, Seeds, Rings };

  std::string name;
  std::string set = "default";
  Kind kind = Kind::Csv;
  std::filesystem::path path;  // file-backed kinds
  int k = 0;                   // 0: number of distinct labels
  bool normalize_diameter = false;

  // Csv layout
  bool has_header = false;
  int label_column = -1;
  char delimiter = ',';
  bool whitespace = false;
  bool allow_duplicates = false;

  // Rings generator
  int rings_n = 900;
  double rings_dispersion = 0.0;
  std::uint64_t rings_seed = 1;
};

Dataset load_source(const DatasetSource& src);

struct ExperimentConfig {
  std::vector<DatasetSource> datasets;
  std::vector<MethodSpec> methods = all_methods();
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "results";
  double eig_tol = 1e-9;
  int workers = 1;
  Discretizer discretizer = Discretizer::Rotation;
  /// Forces diameter normalization on every dataset.
  bool normalize_diameter = false;

  void validate() const;
};

/// Parses the flat `key = value` format. Relative dataset paths are resolved
/// against `base_dir`.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Outcome of one (method, dataset) run.
struct RunRecord {
  std::string set;
  std::string dataset;
  MethodSpec method;
  int n = 0;
  int k = 0;
  int K = 0;
  double epsilon = std::nan("");
  double theta = std::nan("");
  IndexReport indices;
  int nc = 0;
  int aggregation_edges = 0;
  bool failed = false;
  std::string error;
  double seconds = 0.0;

  /// NMI used for aggregation: 0 for failed runs.
  double alpha() const { return failed ? 0.0 : indices.nmi; }
};

struct MethodSummary {
  MethodSpec method;
  double theta = 0.0;  // mean sparsity over the set's datasets
  double alpha = 0.0;  // mean NMI, failed runs scored 0
  int rank = 0;
  int failures = 0;
};

struct SetSummary {
  std::string set;
  std::vector<std::string> datasets;
  std::vector<MethodSummary> methods;  // config method order
};

struct EvaluationReport {
  std::vector<RunRecord> runs;  // dataset-major, then config method order
  std::vector<SetSummary> sets;
};

/// Everything produced by a run, handed to an optional observer for checks.
/// `spectral` is null when the run failed before clustering.
struct RunArtifacts {
  const Dataset& data;
  const RunRecord& record;
  const BuildResult* build;
  const SpectralResult* spectral;
};
using RunObserver = std::function<void(const RunArtifacts&)>;

/// Runs every configured method on every dataset. Per-run failures are
/// recorded and never abort the matrix. The observer is called serially.
EvaluationReport run_experiment(const ExperimentConfig& cfg, const RunObserver& observer = {});

/// Competition ("1224") ranking: 1 + number of strictly larger values.
std::vector<int> rank_methods(const std::vector<double>& alphas);

/// Aggregates runs into per-set summaries, sets in order of first appearance.
std::vector<SetSummary> summarize(const std::vector<RunRecord>& runs,
                                  const std::vector<MethodSpec>& methods);

/// Writes runs.csv, timings.csv and per-set sparsity/accuracy tables and plot data.
/// Returns the written paths.
std::vector<std::filesystem::path> emit_reports(const EvaluationReport& report,
                                                const std::filesystem::path& dir);

/// The deterministic per-run CSV (no wall times).
void write_runs_csv(const EvaluationReport& report, std::ostream& out);

/// Shortest round-trip decimal representation; empty for NaN.
std::string format_double(double x);

}  // namespace simgraph
