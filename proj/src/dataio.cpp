#include "skclust/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace skclust {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool looks_numeric(const std::string& cell) {
  double d;
  return parse_double(cell, d);
}

}  // namespace

int DataMatrix::class_count() const {
  if (!labels || labels->empty()) return 0;
  return *std::max_element(labels->begin(), labels->end()) + 1;
}

LabelVector remap_labels(const std::vector<long long>& raw) {
  std::map<long long, int> ids;
  for (long long v : raw) ids.emplace(v, 0);
  int next = 0;
  for (auto& [key, idx] : ids) idx = next++;
  LabelVector out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = ids[raw[i]];
  return out;
}

DataMatrix load_csv(const std::string& path, const std::optional<ColumnSpec>& label_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_line(line));
  }
  if (rows.empty()) throw EmptyDataset("file has no data rows: " + path);

  // Header detection: any non-numeric cell in the first line.
  std::vector<std::string> header;
  bool has_header = std::any_of(rows[0].begin(), rows[0].end(),
                                [](const std::string& c) { return !looks_numeric(c); });
  std::size_t first_data = 0;
  if (has_header) {
    header = rows[0];
    first_data = 1;
  }
  if (rows.size() - first_data < 2) throw EmptyDataset("need at least 2 samples: " + path);

  const std::size_t cols = rows[first_data].size();
  if (cols == 0) throw ParseError("row 1 has no columns");

  // Resolve the label column, if requested.
  std::ptrdiff_t label_idx = -1;
  if (label_column) {
    const std::string spec = trim(label_column->raw);
    long long idx = 0;
    auto [p, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), idx);
    if (ec == std::errc() && p == spec.data() + spec.size()) {
      if (idx < 0) idx += static_cast<long long>(cols);
      if (idx < 0 || idx >= static_cast<long long>(cols))
        throw InvalidConfig("label column index out of range: " + spec);
      label_idx = static_cast<std::ptrdiff_t>(idx);
    } else {
      if (!has_header) throw InvalidConfig("label column by name requires a header row");
      auto it = std::find_if(header.begin(), header.end(),
                             [&](const std::string& h) { return trim(h) == spec; });
      if (it == header.end()) throw InvalidConfig("label column not found: " + spec);
      label_idx = it - header.begin();
    }
  }

  const std::size_t n = rows.size() - first_data;
  const std::size_t dim = label_idx >= 0 ? cols - 1 : cols;
  if (dim == 0) throw EmptyDataset("no feature columns left after label extraction");

  Eigen::MatrixXd values(n, dim);
  std::vector<long long> raw_labels;
  raw_labels.reserve(label_idx >= 0 ? n : 0);

  for (std::size_t r = 0; r < n; ++r) {
    const auto& cells = rows[first_data + r];
    if (cells.size() != cols) {
      throw ParseError("ragged row " + std::to_string(first_data + r + 1) + ": expected " +
                       std::to_string(cols) + " columns, got " + std::to_string(cells.size()));
    }
    std::size_t out_c = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      double v;
      if (!parse_double(cells[c], v) || !std::isfinite(v)) {
        throw ParseError("non-numeric cell at row " + std::to_string(first_data + r + 1) +
                         ", column " + std::to_string(c + 1) + ": '" + trim(cells[c]) + "'");
      }
      if (static_cast<std::ptrdiff_t>(c) == label_idx) {
        const double rounded = std::nearbyint(v);
        if (std::abs(v - rounded) > 1e-9) {
          throw ParseError("label cell at row " + std::to_string(first_data + r + 1) +
                           " is not an integer: '" + trim(cells[c]) + "'");
        }
        raw_labels.push_back(static_cast<long long>(rounded));
      } else {
        values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(out_c++)) = v;
      }
    }
  }

  DataMatrix data;
  data.values = std::move(values);
  if (label_idx >= 0) data.labels = remap_labels(raw_labels);
  return data;
}

void save_csv(const DataMatrix& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  char buf[64];
  for (Eigen::Index r = 0; r < data.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.values.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.values(r, c));
      if (c) out << ',';
      out << buf;
    }
    if (data.labels) out << ',' << (*data.labels)[static_cast<std::size_t>(r)];
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

DataMatrix standardize(const DataMatrix& data) {
  if (data.n() < 2) throw EmptyDataset("standardize needs n >= 2");
  DataMatrix out = data;
  const double n = static_cast<double>(out.n());
  for (Eigen::Index c = 0; c < out.values.cols(); ++c) {
    auto col = out.values.col(c);
    col.array() -= col.mean();
    const double sd = std::sqrt(col.squaredNorm() / n);
    if (sd > 0.0) col /= sd;
  }
  return out;
}

}  // namespace skclust
