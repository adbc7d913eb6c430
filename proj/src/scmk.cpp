#include "skclust/scmk.hpp"

#include <cmath>
#include <limits>

#include "skclust/detail/fit_common.hpp"
#include "skclust/graph.hpp"
#include "skclust/parallel.hpp"
#include "skclust/simplex_qp.hpp"

namespace skclust {

Eigen::VectorXd kernel_residuals(const KernelBank& bank, const Eigen::MatrixXd& similarity,
                                 double floor) {
  if (bank.size() == 0) throw DimensionMismatch("empty kernel bank");
  if (bank.n() != similarity.rows() || similarity.rows() != similarity.cols())
    throw DimensionMismatch("kernel_residuals: dimension mismatch");
  Eigen::VectorXd h(bank.size());
  parallel_for(static_cast<std::size_t>(bank.size()), [&](std::size_t i) {
    h(static_cast<Eigen::Index>(i)) =
        reconstruction_term(bank.kernels[i], similarity);
  });
  return h.cwiseMax(floor);
}

Eigen::VectorXd update_weights(const Eigen::VectorXd& residuals) {
  if (residuals.size() == 0) throw InvalidInput("empty residual vector");
  if ((residuals.array() <= 0.0).any())
    throw InvalidInput("weight update needs strictly positive residuals");
  // Normalizing by the largest residual first makes the result exactly
  // invariant to a common scaling of the input.
  const double scale = residuals.maxCoeff();
  const Eigen::ArrayXd inv = scale / residuals.array();
  const Eigen::ArrayXd sqrt_w = inv / inv.sum();
  return (sqrt_w * sqrt_w).matrix();
}

FitResult fit_scmk(const KernelBank& bank, const ScmkConfig& cfg) {
  const int r = bank.size();
  if (r == 0) throw DimensionMismatch("empty kernel bank");
  const Eigen::Index n = bank.n();
  detail::validate_fit_config(cfg, n);
  for (const auto& k : bank.kernels) {
    if (k.n() != n) throw DimensionMismatch("bank kernels have differing dimensions");
    if (!is_symmetric(k.gram, 1e-8)) throw InvalidInput("bank kernel is not symmetric");
  }

  FitResult result;
  Eigen::MatrixXd similarity = random_similarity(n, cfg.seed);
  Eigen::MatrixXd indicator;

  // Uniform start satisfying sum sqrt(w) = 1.
  Eigen::VectorXd weights =
      Eigen::VectorXd::Constant(r, 1.0 / (static_cast<double>(r) * static_cast<double>(r)));
  result.weight_trace.push_back(weights);

  // lambda_max of the combination is bounded by the weighted per-kernel bound.
  Eigen::VectorXd kernel_lambda(r);
  for (int i = 0; i < r; ++i)
    kernel_lambda(i) = estimate_gradient_lipschitz(bank.kernels[i].gram) / 2.0;

  double beta = cfg.beta;
  double prev = std::numeric_limits<double>::infinity();
  Eigen::VectorXd residuals;

  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    const KernelMatrix combined = combine(bank, weights);

    indicator = update_indicator(similarity, cfg.clusters);
    const Laplacian lap = build_laplacian(similarity);
    const double graph_before = (indicator.transpose() * lap.matrix * indicator).trace();
    result.block_objective_trace.push_back(reconstruction_term(combined, similarity) +
                                           cfg.alpha * similarity.squaredNorm() +
                                           beta * graph_before);

    const double lip = 2.0 * (cfg.alpha + weights.dot(kernel_lambda)) * 1.0000001;
    similarity = update_similarity(combined, indicator, cfg.alpha, beta, &similarity, lip,
                                   cfg.qp_tol, cfg.qp_max_iter);

    residuals = kernel_residuals(bank, similarity, cfg.h_floor);
    const Laplacian lap_new = build_laplacian(similarity);
    const double graph_after = (indicator.transpose() * lap_new.matrix * indicator).trace();
    const double z_terms = cfg.alpha * similarity.squaredNorm() + beta * graph_after;
    result.block_objective_trace.push_back(weights.dot(residuals) + z_terms);

    weights = update_weights(residuals);
    result.weight_trace.push_back(weights);
    const double objective = weights.dot(residuals) + z_terms;
    result.block_objective_trace.push_back(objective);
    result.objective_trace.push_back(objective);

    if (cfg.beta_autotune) detail::autotune_beta(similarity, cfg, beta);

    if (outer > 0 && detail::relative_change_below(prev, objective, cfg.tol)) {
      result.converged = true;
      prev = objective;
      break;
    }
    prev = objective;
  }

  result.similarity = std::move(similarity);
  result.indicator = std::move(indicator);
  result.weights = weights;
  result.final_beta = beta;
  result.final_objective = prev;
  detail::extract_labels(result.similarity, result.indicator, cfg, result);
  return result;
}

}  // namespace skclust
