#pragma once

#include <Eigen/Core>
#include <vector>

#include "skclust/dataio.hpp"
#include "skclust/errors.hpp"

namespace skclust {

/// Unnormalized graph Laplacian D - (Z + Z^T)/2 of a similarity matrix.
struct Laplacian {
  Eigen::MatrixXd matrix;    // L
  Eigen::MatrixXd affinity;  // (Z + Z^T)/2
  Eigen::VectorXd degrees;   // diagonal of D
};

Laplacian build_laplacian(const Eigen::MatrixXd& similarity);

struct ComponentResult {
  int count = 0;
  LabelVector labels;  // component ids in order of first appearance
};

/// Connected components of the undirected graph with an edge (i,j) whenever
/// (Z_ij + Z_ji)/2 > eps.
ComponentResult connected_components(const Eigen::MatrixXd& similarity, double eps = 1e-8);

/// Orthonormal eigenvectors of the c algebraically smallest eigenvalues of a
/// symmetric matrix, eigenvalues ascending, with a deterministic sign
/// convention (largest-magnitude component positive, ties to lowest index).
/// Dense solver up to dense_limit rows, shifted subspace iteration above.
Eigen::MatrixXd smallest_eigenvectors(const Eigen::MatrixXd& sym, int count,
                                      Eigen::Index dense_limit = 2000);

Eigen::MatrixXd smallest_eigenvectors_dense(const Eigen::MatrixXd& sym, int count);
Eigen::MatrixXd smallest_eigenvectors_iterative(const Eigen::MatrixXd& sym, int count);

/// Symmetric matrix of squared Euclidean distances between the rows of a
/// matrix (zero diagonal). For an indicator matrix these are the pairwise
/// embedding distances that drive the similarity update.
Eigen::MatrixXd pairwise_row_distances(const Eigen::MatrixXd& rows);

/// Column-simplex check used by tests and input validation.
bool is_column_stochastic(const Eigen::MatrixXd& z, double tol = 1e-9);

}  // namespace skclust
