#include "simgraph/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace simgraph {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line, const CsvSchema& schema) {
  std::vector<std::string> fields;
  if (schema.whitespace) {
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) fields.push_back(tok);
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(schema.delimiter, start);
    fields.emplace_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_double(std::string_view tok, const std::string& where) {
  tok = trim(tok);
  double value = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw DataError(where + ": not a number: '" + std::string(tok) + "'");
  }
  return value;
}

int resolve_column(int col, int width) { return col < 0 ? width + col : col; }

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

Dataset make_dataset(Eigen::MatrixXd points, std::span<const std::string> raw_labels,
                     std::string name, bool allow_duplicates) {
  if (static_cast<std::size_t>(points.rows()) != raw_labels.size()) {
    throw DataError(name + ": label count does not match point count");
  }
  Dataset d;
  d.points = std::move(points);
  d.name = std::move(name);
  std::map<std::string, int, std::less<>> ids;
  d.labels.reserve(raw_labels.size());
  for (const auto& raw : raw_labels) {
    auto [it, inserted] = ids.try_emplace(raw, static_cast<int>(ids.size()) + 1);
    d.labels.push_back(it->second);
  }
  d.k = static_cast<int>(ids.size());
  validate(d, allow_duplicates);
  return d;
}

void validate(const Dataset& d, bool allow_duplicates) {
  const int n = d.size();
  if (n < 2) throw DataError(d.name + ": need at least 2 points");
  if (d.labels.size() != static_cast<std::size_t>(n)) {
    throw DataError(d.name + ": label count does not match point count");
  }
  if (!d.points.allFinite()) throw DataError(d.name + ": non-finite coordinate");
  std::vector<int> sizes(static_cast<std::size_t>(std::max(d.k, 0)) + 1, 0);
  for (int label : d.labels) {
    if (label < 1 || label > d.k) throw DataError(d.name + ": label out of range 1..k");
    ++sizes[static_cast<std::size_t>(label)];
  }
  if (d.k < 2) throw DataError(d.name + ": fewer than 2 clusters in labels");
  if (std::any_of(sizes.begin() + 1, sizes.end(), [](int c) { return c == 0; })) {
    throw DataError(d.name + ": empty target cluster");
  }
  if (allow_duplicates) return;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto row_less = [&](int a, int b) {
    for (Eigen::Index c = 0; c < d.points.cols(); ++c) {
      if (d.points(a, c) != d.points(b, c)) return d.points(a, c) < d.points(b, c);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (d.points.row(order[i - 1]) == d.points.row(order[i])) {
      throw DataError(d.name + ": duplicate points at rows " + std::to_string(order[i - 1] + 1) +
                      " and " + std::to_string(order[i] + 1));
    }
  }
}

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  auto lines = read_lines(path);
  if (schema.has_header && !lines.empty()) lines.erase(lines.begin());
  if (lines.empty()) throw DataError(path.string() + ": no data rows");

  const auto first = split(lines.front(), schema);
  const int width = static_cast<int>(first.size());
  const int label_col = resolve_column(schema.label_column, width);
  if (label_col < 0 || label_col >= width) throw DataError(path.string() + ": bad label column");
  std::vector<int> coords;
  if (schema.coordinate_columns.empty()) {
    for (int c = 0; c < width; ++c) {
      if (c != label_col) coords.push_back(c);
    }
  } else {
    for (int c : schema.coordinate_columns) coords.push_back(resolve_column(c, width));
  }
  if (coords.empty()) throw DataError(path.string() + ": no coordinate columns");

  Eigen::MatrixXd points(static_cast<Eigen::Index>(lines.size()),
                         static_cast<Eigen::Index>(coords.size()));
  std::vector<std::string> labels;
  labels.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto fields = split(lines[r], schema);
    const std::string where = path.filename().string() + ":" + std::to_string(r + 1);
    if (static_cast<int>(fields.size()) != width) {
      throw DataError(where + ": expected " + std::to_string(width) + " fields, got " +
                      std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < coords.size(); ++c) {
      points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_double(fields[static_cast<std::size_t>(coords[c])], where);
    }
    labels.push_back(fields[static_cast<std::size_t>(label_col)]);
  }
  return make_dataset(std::move(points), labels, path.stem().string(), schema.allow_duplicates);
}

Dataset load_iris(const std::filesystem::path& path) {
  CsvSchema schema;
  schema.label_column = 4;
  schema.allow_duplicates = true;
  auto d = load_csv(path, schema);
  d.name = "iris";
  return d;
}

Dataset load_wine(const std::filesystem::path& path) {
  CsvSchema schema;
  schema.label_column = 0;
  auto d = load_csv(path, schema);
  d.name = "wine";
  return d;
}

Dataset load_seeds(const std::filesystem::path& path) {
  CsvSchema schema;
  schema.whitespace = true;
  schema.label_column = 7;
  auto d = load_csv(path, schema);
  d.name = "seeds";
  return d;
}

Dataset load_vote(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  CsvSchema schema;
  std::vector<VoteRecord> records;
  records.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto fields = split(lines[r], schema);
    if (fields.size() != 17) {
      throw DataError(path.filename().string() + ":" + std::to_string(r + 1) +
                      ": expected party + 16 votes");
    }
    VoteRecord rec;
    rec.party = fields[0];
    std::copy(fields.begin() + 1, fields.end(), rec.votes.begin());
    records.push_back(std::move(rec));
  }
  return encode_vote(records);
}

Dataset encode_vote(std::span<const VoteRecord> records) {
  Eigen::MatrixXd points(static_cast<Eigen::Index>(records.size()), 16);
  std::vector<std::string> labels;
  labels.reserve(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (std::size_t q = 0; q < 16; ++q) {
      const std::string& tok = records[r].votes[q];
      double v = 0.0;
      if (tok == "y" || tok == "yes") {
        v = 1.0;
      } else if (tok == "n" || tok == "no") {
        v = 0.0;
      } else if (tok == "?" || tok == "missing") {
        v = 0.5;
      } else {
        throw DataError("vote record " + std::to_string(r + 1) + ": unknown token '" + tok + "'");
      }
      points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)) = v;
    }
    labels.push_back(records[r].party);
  }
  return make_dataset(std::move(points), labels, "vote", /*allow_duplicates=*/true);
}

Dataset generate_rings(int n_total, double dispersion, std::uint64_t seed) {
  if (n_total < 4 || n_total % 2 != 0) throw DataError("rings: n_total must be even and >= 4");
  if (!(dispersion >= 0.0)) throw DataError("rings: dispersion must be nonnegative");

  const int per_ring = n_total / 2;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  Eigen::MatrixXd points(n_total, 3);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n_total));
  for (int ring = 0; ring < 2; ++ring) {
    for (int j = 0; j < per_ring; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / per_ring;
      Eigen::Vector3d p = ring == 0 ? Eigen::Vector3d(std::cos(theta), std::sin(theta), 0.0)
                                    : Eigen::Vector3d(1.0 + std::cos(theta), 0.0, std::sin(theta));
      if (dispersion > 0.0) {
        for (int c = 0; c < 3; ++c) p[c] += dispersion * noise(rng);
      }
      points.row(ring * per_ring + j) = p.transpose();
      labels.push_back(ring == 0 ? "A" : "B");
    }
  }
  auto d = make_dataset(std::move(points), labels, "rings", /*allow_duplicates=*/false);
  return d;
}

Dataset normalize_diameter(const Dataset& d) {
  Dataset out = d;
  const Eigen::RowVectorXd centroid = d.points.colwise().mean();
  out.points = d.points.rowwise() - centroid;
  double diameter = 0.0;
  for (int i = 0; i < out.size(); ++i) {
    for (int j = i + 1; j < out.size(); ++j) {
      diameter = std::max(diameter, (out.points.row(i) - out.points.row(j)).norm());
    }
  }
  if (diameter > 0.0) out.points /= diameter;
  return out;
}

void write_csv(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  char buf[64];
  for (int i = 0; i < d.size(); ++i) {
    for (int c = 0; c < d.dims(); ++c) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d.points(i, c));
      out.write(buf, ptr - buf);
      out << ',';
    }
    out << d.labels[static_cast<std::size_t>(i)] << '\n';
  }
}

}  // namespace simgraph
