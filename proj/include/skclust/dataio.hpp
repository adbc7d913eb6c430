#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "skclust/errors.hpp"

namespace skclust {

using LabelVector = std::vector<int>;

/// Row-per-sample feature matrix with optional ground-truth labels.
/// Labels are always remapped to the contiguous range 0..c-1.
struct DataMatrix {
  Eigen::MatrixXd values;  // n x D
  std::optional<LabelVector> labels;

  Eigen::Index n() const { return values.rows(); }
  Eigen::Index dim() const { return values.cols(); }
  int class_count() const;
};

/// Selects the label column either by zero-based index (negative counts from
/// the end, so "-1" is the last column) or by header name.
struct ColumnSpec {
  std::string raw;
};

/// Loads a comma-separated file. A single header row is auto-detected when the
/// first line contains a cell that does not parse as a number. Missing or
/// non-numeric cells and ragged rows are hard errors.
DataMatrix load_csv(const std::string& path,
                    const std::optional<ColumnSpec>& label_column = std::nullopt);

/// Writes values (and the label column last, when present) with enough digits
/// to round-trip exactly. No header row is emitted.
void save_csv(const DataMatrix& data, const std::string& path);

/// Zero-mean, unit-variance per feature (population variance). Constant
/// features are centered only. Labels pass through untouched.
DataMatrix standardize(const DataMatrix& data);

/// Remaps arbitrary integer class ids to 0..c-1 by ascending original id.
LabelVector remap_labels(const std::vector<long long>& raw);

}  // namespace skclust
