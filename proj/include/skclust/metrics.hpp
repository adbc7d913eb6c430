#pragma once

#include <Eigen/Core>

#include "skclust/dataio.hpp"
#include "skclust/errors.hpp"

namespace skclust {

enum class NmiNormalization { geometric, arithmetic };

struct MetricReport {
  double acc = 0.0;
  double nmi = 0.0;
  double purity = 0.0;
  Eigen::MatrixXi contingency;  // predicted clusters x true classes
};

/// Count matrix between the two labelings (rows: pred, cols: truth).
Eigen::MatrixXi contingency_table(const LabelVector& pred, const LabelVector& truth);

/// Fraction matched under the best label bijection (optimal assignment).
double accuracy(const LabelVector& pred, const LabelVector& truth);

/// I(pred; truth) normalized by the chosen mean of the entropies (natural log).
double nmi(const LabelVector& pred, const LabelVector& truth,
           NmiNormalization norm = NmiNormalization::geometric);

/// Mean over predicted clusters of their largest true-class overlap.
double purity(const LabelVector& pred, const LabelVector& truth);

MetricReport evaluate(const LabelVector& pred, const LabelVector& truth,
                      NmiNormalization norm = NmiNormalization::geometric);

/// Minimum-cost perfect assignment on a square cost matrix (O(n^3)).
/// Returns for each row the assigned column.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

}  // namespace skclust
