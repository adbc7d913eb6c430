#pragma once

#include <Eigen/Core>

#include "skclust/scsk.hpp"

namespace skclust::detail {

void validate_fit_config(const ScskConfig& cfg, Eigen::Index n);

/// Component labels when the learned graph splits into exactly c pieces,
/// otherwise seeded k-means on the indicator rows. Fills labels, label_source
/// and components_found.
void extract_labels(const Eigen::MatrixXd& similarity, const Eigen::MatrixXd& indicator,
                    const ScskConfig& cfg, FitResult& result);

bool relative_change_below(double prev, double cur, double tol);

/// Doubles beta while the graph is under-segmented, halves it when
/// over-segmented.
void autotune_beta(const Eigen::MatrixXd& similarity, const ScskConfig& cfg, double& beta);

}  // namespace skclust::detail
