#pragma once

#include <Eigen/Core>

#include "skclust/errors.hpp"

namespace skclust {

/// One column subproblem: minimize z^T Q z + b^T z over the probability simplex.
/// Q is alpha*I + K, shared across columns, so it is held by reference.
/// lipschitz caches 2*lambda_max(Q); 0 means "estimate on demand".
struct ColumnQp {
  const Eigen::MatrixXd& quadratic;
  Eigen::VectorXd linear;
  double lipschitz = 0.0;
};

struct QpSolution {
  Eigen::VectorXd z;
  double kkt_residual = 0.0;
  int iterations = 0;
};

/// Euclidean projection onto { z >= 0, sum z = 1 } via sort-and-threshold.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

/// z^T Q z + b^T z.
double qp_objective(const ColumnQp& qp, const Eigen::VectorXd& z);

/// KKT stationarity residual on the simplex: positive coordinates must share a
/// common gradient value and zero coordinates must not undercut it.
double simplex_kkt_residual(const Eigen::VectorXd& gradient, const Eigen::VectorXd& z);

/// Upper bound on 2*lambda_max(Q) by power iteration (deterministic start).
double estimate_gradient_lipschitz(const Eigen::MatrixXd& q);

/// Accelerated projected gradient with a monotone safeguard and restart.
/// The objective sequence is non-increasing from the warm start. Throws
/// NotConverged (carrying the best iterate) when max_iter is exhausted.
QpSolution solve_column_qp(const ColumnQp& qp, double tol = 1e-8, int max_iter = 1000,
                           const Eigen::VectorXd* warm_start = nullptr);

}  // namespace skclust
