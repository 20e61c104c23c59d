#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simgraph {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Labeled point set: one row of `points` per object, `labels` in 1..k.
struct Dataset {
  Eigen::MatrixXd points;
  std::vector<int> labels;
  int k = 0;
  std::string name;

  int size() const { return static_cast<int>(points.rows()); }
  int dims() const { return static_cast<int>(points.cols()); }
};

/// Column layout of a labeled CSV file. Column indices are 0-based.
struct CsvSchema {
  /// Coordinate columns in order; empty means "every column except the label".
  std::vector<int> coordinate_columns;
  /// Label column; negative values count from the end (-1 is the last column).
  int label_column = -1;
  bool has_header = false;
  char delimiter = ',';
  /// Split on runs of whitespace instead of `delimiter`.
  bool whitespace = false;
  /// Some reference sets (iris, vote) repeat rows; plain CSV input rejects them.
  bool allow_duplicates = false;
};

/// Builds a dataset from raw coordinates and raw label tokens. Labels are
/// remapped to 1..k in order of first appearance.
Dataset make_dataset(Eigen::MatrixXd points, std::span<const std::string> raw_labels,
                     std::string name, bool allow_duplicates = false);

/// Checks the Dataset invariants and throws DataError on violation.
void validate(const Dataset& d, bool allow_duplicates = false);

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

// Adapters for the raw UCI file layouts.
Dataset load_iris(const std::filesystem::path& path);   // iris.data
Dataset load_wine(const std::filesystem::path& path);   // wine.data (class first)
Dataset load_vote(const std::filesystem::path& path);   // house-votes-84.data
Dataset load_seeds(const std::filesystem::path& path);  // seeds_dataset.txt

struct VoteRecord {
  std::array<std::string, 16> votes;
  std::string party;
};

/// yes -> 1, no -> 0, missing -> 0.5. Accepts the UCI tokens y/n/? as well.
Dataset encode_vote(std::span<const VoteRecord> records);

/// Two interlaced unit circles in R^3: ring 1 in the xy-plane around the
/// origin, ring 2 in the xz-plane around (1,0,0). Angles are evenly spaced;
/// each point gets isotropic Gaussian noise of standard deviation `dispersion`.
Dataset generate_rings(int n_total, double dispersion, std::uint64_t seed);

/// Translates to the centroid and rescales so the largest pairwise distance is 1.
Dataset normalize_diameter(const Dataset& d);

/// Writes `x1,...,xm,label` rows.
void write_csv(const Dataset& d, const std::filesystem::path& path);

}  // namespace simgraph
