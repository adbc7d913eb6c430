#pragma once

#include <Eigen/Core>

#include "skclust/scsk.hpp"

namespace skclust {

struct ScmkConfig : ScskConfig {
  double h_floor = 1e-12;  // lower clamp for per-kernel residuals
};

/// Per-kernel self-expression residuals h_i = Tr(K_i - 2 K_i Z + Z^T K_i Z),
/// clamped below at floor (each equals a feature-space squared residual, so
/// it is nonnegative up to roundoff).
Eigen::VectorXd kernel_residuals(const KernelBank& bank, const Eigen::MatrixXd& similarity,
                                 double floor = 1e-12);

/// Closed-form weight update w_i = (h_i * sum_j 1/h_j)^-2; the square roots of
/// the result sum to one. Scale-invariant in h.
Eigen::VectorXd update_weights(const Eigen::VectorXd& residuals);

/// Alternating minimization with a learned convex kernel combination.
FitResult fit_scmk(const KernelBank& bank, const ScmkConfig& cfg);

}  // namespace skclust
