#include "skclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace skclust {

namespace {

// Compress arbitrary integer ids to 0..c-1 (ascending original id).
std::vector<int> compress(const LabelVector& labels, int& classes) {
  std::map<int, int> ids;
  for (int v : labels) ids.emplace(v, 0);
  int next = 0;
  for (auto& [key, idx] : ids) idx = next++;
  classes = next;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
  return out;
}

void check_lengths(const LabelVector& pred, const LabelVector& truth) {
  if (pred.size() != truth.size())
    throw LengthMismatch("label vectors differ in length: " + std::to_string(pred.size()) +
                         " vs " + std::to_string(truth.size()));
  if (pred.empty()) throw LengthMismatch("label vectors are empty");
}

}  // namespace

Eigen::MatrixXi contingency_table(const LabelVector& pred, const LabelVector& truth) {
  check_lengths(pred, truth);
  int cp = 0, ct = 0;
  const auto p = compress(pred, cp);
  const auto t = compress(truth, ct);
  Eigen::MatrixXi table = Eigen::MatrixXi::Zero(cp, ct);
  for (std::size_t i = 0; i < p.size(); ++i) table(p[i], t[i]) += 1;
  return table;
}

std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) throw DimensionMismatch("assignment matrix must be square");
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

double accuracy(const LabelVector& pred, const LabelVector& truth) {
  const Eigen::MatrixXi table = contingency_table(pred, truth);
  const int side = static_cast<int>(std::max(table.rows(), table.cols()));
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(side, side);
  // Maximize matches == minimize negated counts; zero padding handles
  // unequal cluster counts.
  cost.topLeftCorner(table.rows(), table.cols()) = -table.cast<double>();
  const auto assign = min_cost_assignment(cost);
  long long matched = 0;
  for (int r = 0; r < table.rows(); ++r) {
    if (assign[r] < table.cols()) matched += table(r, assign[r]);
  }
  return static_cast<double>(matched) / static_cast<double>(pred.size());
}

double nmi(const LabelVector& pred, const LabelVector& truth, NmiNormalization norm) {
  const Eigen::MatrixXi table = contingency_table(pred, truth);
  const double n = static_cast<double>(pred.size());
  const Eigen::VectorXd row = table.cast<double>().rowwise().sum();
  const Eigen::VectorXd col = table.cast<double>().colwise().sum();

  double hp = 0.0, ht = 0.0, mi = 0.0;
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (row(i) > 0) hp -= row(i) / n * std::log(row(i) / n);
  }
  for (Eigen::Index j = 0; j < col.size(); ++j) {
    if (col(j) > 0) ht -= col(j) / n * std::log(col(j) / n);
  }
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.cols(); ++j) {
      if (table(i, j) == 0) continue;
      const double pij = table(i, j) / n;
      mi += pij * std::log(pij / (row(i) / n * col(j) / n));
    }
  }
  if (hp <= 0.0 && ht <= 0.0) return 1.0;  // both single-cluster: identical partitions
  if (hp <= 0.0 || ht <= 0.0) return 0.0;
  if (mi <= 0.0) return 0.0;
  const double denom = norm == NmiNormalization::geometric ? std::sqrt(hp * ht) : (hp + ht) / 2.0;
  return std::clamp(mi / denom, 0.0, 1.0);
}

double purity(const LabelVector& pred, const LabelVector& truth) {
  const Eigen::MatrixXi table = contingency_table(pred, truth);
  long long hits = 0;
  for (Eigen::Index i = 0; i < table.rows(); ++i) hits += table.row(i).maxCoeff();
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

MetricReport evaluate(const LabelVector& pred, const LabelVector& truth, NmiNormalization norm) {
  MetricReport report;
  report.contingency = contingency_table(pred, truth);
  report.acc = accuracy(pred, truth);
  report.nmi = nmi(pred, truth, norm);
  report.purity = purity(pred, truth);
  return report;
}

}  // namespace skclust
