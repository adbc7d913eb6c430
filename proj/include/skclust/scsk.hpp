#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "skclust/dataio.hpp"
#include "skclust/kernels.hpp"

namespace skclust {

struct ScskConfig {
  double alpha = 0.1;
  double beta = 1e-5;
  int clusters = 2;
  double tol = 1e-6;      // relative objective change
  int max_outer = 100;
  std::uint64_t seed = 0;
  bool beta_autotune = false;
  double component_eps = 1e-8;
  int kmeans_restarts = 20;
  double qp_tol = 1e-8;
  int qp_max_iter = 1000;
};

enum class LabelSource { components, kmeans_on_indicator };

inline const char* to_string(LabelSource s) {
  return s == LabelSource::components ? "components" : "kmeans-on-P";
}

struct FitResult {
  Eigen::MatrixXd similarity;                // Z, columns on the simplex
  Eigen::MatrixXd indicator;                 // P, orthonormal columns
  LabelVector labels;
  std::vector<double> objective_trace;       // objective after each outer iteration
  std::vector<double> block_objective_trace; // objective after every block update
  int components_found = 0;
  bool converged = false;
  LabelSource label_source = LabelSource::components;
  double final_beta = 0.0;
  double final_objective = 0.0;
  // Multiple-kernel extras (empty for the single-kernel fit).
  Eigen::VectorXd weights;
  std::vector<Eigen::VectorXd> weight_trace;
};

/// Tr(K - 2KZ + Z^T K Z) + alpha ||Z||_F^2 + beta Tr(P^T L P), with L built
/// from Z.
double scsk_objective(const KernelMatrix& kernel, const Eigen::MatrixXd& similarity,
                      const Eigen::MatrixXd& indicator, double alpha, double beta);

/// Kernel-space self-expression residual Tr(K - 2KZ + Z^T K Z).
double reconstruction_term(const KernelMatrix& kernel, const Eigen::MatrixXd& similarity);

/// The c smallest eigenvectors of the Laplacian of the similarity graph.
Eigen::MatrixXd update_indicator(const Eigen::MatrixXd& similarity, int clusters);

/// Solves the per-column simplex QP for every column; when warm is given each
/// column starts from its previous value. lipschitz, when positive, short-cuts
/// the step-size estimation for quadratic = alpha*I + K.
Eigen::MatrixXd update_similarity(const KernelMatrix& kernel, const Eigen::MatrixXd& indicator,
                                  double alpha, double beta,
                                  const Eigen::MatrixXd* warm = nullptr, double lipschitz = 0.0,
                                  double qp_tol = 1e-8, int qp_max_iter = 1000);

/// Seeded random similarity: uniform columns projected onto the simplex.
Eigen::MatrixXd random_similarity(Eigen::Index n, std::uint64_t seed);

/// Alternating minimization of the single-kernel objective.
FitResult fit_scsk(const KernelMatrix& kernel, const ScskConfig& cfg);

}  // namespace skclust
