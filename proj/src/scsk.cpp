#include "skclust/scsk.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <random>

#include "skclust/baselines.hpp"
#include "skclust/detail/fit_common.hpp"
#include "skclust/graph.hpp"
#include "skclust/parallel.hpp"
#include "skclust/simplex_qp.hpp"

namespace skclust {

namespace detail {

void validate_fit_config(const ScskConfig& cfg, Eigen::Index n) {
  if (!(cfg.alpha > 0)) throw InvalidConfig("alpha must be > 0");
  if (!(cfg.beta > 0)) throw InvalidConfig("beta must be > 0");
  if (cfg.clusters < 2 || cfg.clusters >= n)
    throw InvalidConfig("cluster count must satisfy 2 <= c < n");
  if (!(cfg.tol > 0) || cfg.max_outer < 1) throw InvalidConfig("bad tol/max_outer");
}

void extract_labels(const Eigen::MatrixXd& similarity, const Eigen::MatrixXd& indicator,
                    const ScskConfig& cfg, FitResult& result) {
  const ComponentResult comps = connected_components(similarity, cfg.component_eps);
  result.components_found = comps.count;
  if (comps.count == cfg.clusters) {
    result.labels = comps.labels;
    result.label_source = LabelSource::components;
  } else {
    KMeansConfig kcfg;
    kcfg.k = cfg.clusters;
    kcfg.restarts = cfg.kmeans_restarts;
    kcfg.seed = cfg.seed;
    result.labels = kmeans(indicator, kcfg).labels;
    result.label_source = LabelSource::kmeans_on_indicator;
  }
}

bool relative_change_below(double prev, double cur, double tol) {
  return std::abs(prev - cur) / std::max(std::abs(prev), 1e-12) < tol;
}

void autotune_beta(const Eigen::MatrixXd& similarity, const ScskConfig& cfg, double& beta) {
  const int found = connected_components(similarity, cfg.component_eps).count;
  if (found < cfg.clusters) {
    beta *= 2.0;
  } else if (found > cfg.clusters) {
    beta /= 2.0;
  }
}

}  // namespace detail

double reconstruction_term(const KernelMatrix& kernel, const Eigen::MatrixXd& similarity) {
  if (kernel.n() != similarity.rows() || similarity.rows() != similarity.cols())
    throw DimensionMismatch("reconstruction_term: dimension mismatch");
  const Eigen::MatrixXd kz = kernel.gram * similarity;
  return kernel.gram.trace() - 2.0 * kz.trace() + similarity.cwiseProduct(kz).sum();
}

double scsk_objective(const KernelMatrix& kernel, const Eigen::MatrixXd& similarity,
                      const Eigen::MatrixXd& indicator, double alpha, double beta) {
  if (indicator.rows() != similarity.rows())
    throw DimensionMismatch("scsk_objective: indicator row count mismatch");
  const Laplacian lap = build_laplacian(similarity);
  const double graph_term = (indicator.transpose() * lap.matrix * indicator).trace();
  return reconstruction_term(kernel, similarity) + alpha * similarity.squaredNorm() +
         beta * graph_term;
}

Eigen::MatrixXd update_indicator(const Eigen::MatrixXd& similarity, int clusters) {
  const Laplacian lap = build_laplacian(similarity);
  return smallest_eigenvectors(lap.matrix, clusters);
}

Eigen::MatrixXd update_similarity(const KernelMatrix& kernel, const Eigen::MatrixXd& indicator,
                                  double alpha, double beta, const Eigen::MatrixXd* warm,
                                  double lipschitz, double qp_tol, int qp_max_iter) {
  const Eigen::Index n = kernel.n();
  if (indicator.rows() != n) throw DimensionMismatch("update_similarity: indicator rows != n");
  if (warm && (warm->rows() != n || warm->cols() != n))
    throw DimensionMismatch("update_similarity: warm start has wrong shape");

  Eigen::MatrixXd quadratic = kernel.gram;
  quadratic.diagonal().array() += alpha;
  const double lip = lipschitz > 0 ? lipschitz : estimate_gradient_lipschitz(quadratic);
  const Eigen::MatrixXd distances = pairwise_row_distances(indicator);

  Eigen::MatrixXd result(n, n);
  // Column problems are independent; each worker writes only its own column.
  std::mutex err_mu;
  int err_column = -1;
  double err_residual = 0.0;

  parallel_for(static_cast<std::size_t>(n), [&](std::size_t col) {
    const Eigen::Index i = static_cast<Eigen::Index>(col);
    ColumnQp qp{quadratic, (beta / 2.0) * distances.col(i) - 2.0 * kernel.gram.col(i), lip};
    try {
      if (warm) {
        const Eigen::VectorXd start = warm->col(i);
        result.col(i) = solve_column_qp(qp, qp_tol, qp_max_iter, &start).z;
      } else {
        result.col(i) = solve_column_qp(qp, qp_tol, qp_max_iter).z;
      }
    } catch (const NotConverged& e) {
      result.col(i) = e.best_iterate;
      std::lock_guard<std::mutex> lock(err_mu);
      if (err_column < 0 || static_cast<int>(i) < err_column) {
        err_column = static_cast<int>(i);
        err_residual = e.kkt_residual;
      }
    }
  });

  if (err_column >= 0) {
    throw NotConverged("column " + std::to_string(err_column) + " did not reach tol " +
                           std::to_string(qp_tol),
                       result.col(err_column), err_residual, err_column);
  }
  return result;
}

Eigen::MatrixXd random_similarity(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::MatrixXd z(n, n);
  Eigen::VectorXd col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) col(i) = uniform(rng);
    z.col(j) = project_simplex(col);
  }
  return z;
}

FitResult fit_scsk(const KernelMatrix& kernel, const ScskConfig& cfg) {
  const Eigen::Index n = kernel.n();
  detail::validate_fit_config(cfg, n);
  if (!is_symmetric(kernel.gram, 1e-8)) throw InvalidInput("kernel matrix is not symmetric");

  FitResult result;
  Eigen::MatrixXd similarity = random_similarity(n, cfg.seed);
  Eigen::MatrixXd indicator;

  Eigen::MatrixXd quadratic = kernel.gram;
  quadratic.diagonal().array() += cfg.alpha;
  const double lip = estimate_gradient_lipschitz(quadratic);

  double beta = cfg.beta;
  double prev = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    indicator = update_indicator(similarity, cfg.clusters);
    result.block_objective_trace.push_back(
        scsk_objective(kernel, similarity, indicator, cfg.alpha, beta));

    similarity = update_similarity(kernel, indicator, cfg.alpha, beta, &similarity, lip,
                                   cfg.qp_tol, cfg.qp_max_iter);
    const double objective = scsk_objective(kernel, similarity, indicator, cfg.alpha, beta);
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
  result.final_beta = beta;
  result.final_objective = prev;
  detail::extract_labels(result.similarity, result.indicator, cfg, result);
  return result;
}

}  // namespace skclust
