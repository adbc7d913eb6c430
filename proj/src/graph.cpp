#include "skclust/graph.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <vector>

namespace skclust {

Laplacian build_laplacian(const Eigen::MatrixXd& similarity) {
  if (similarity.rows() != similarity.cols())
    throw DimensionMismatch("similarity matrix must be square");
  Laplacian lap;
  lap.affinity = (similarity + similarity.transpose()) / 2.0;
  lap.degrees = lap.affinity.rowwise().sum();
  lap.matrix = -lap.affinity;
  lap.matrix.diagonal() += lap.degrees;
  return lap;
}

ComponentResult connected_components(const Eigen::MatrixXd& similarity, double eps) {
  if (similarity.rows() != similarity.cols())
    throw DimensionMismatch("similarity matrix must be square");
  const Eigen::Index n = similarity.rows();
  ComponentResult res;
  res.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<Eigen::Index> stack;
  for (Eigen::Index start = 0; start < n; ++start) {
    if (res.labels[static_cast<std::size_t>(start)] != -1) continue;
    const int id = res.count++;
    stack.push_back(start);
    res.labels[static_cast<std::size_t>(start)] = id;
    while (!stack.empty()) {
      const Eigen::Index i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j || res.labels[static_cast<std::size_t>(j)] != -1) continue;
        if ((similarity(i, j) + similarity(j, i)) / 2.0 > eps) {
          res.labels[static_cast<std::size_t>(j)] = id;
          stack.push_back(j);
        }
      }
    }
  }
  return res;
}

namespace {

void apply_sign_convention(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (vectors(arg, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

void check_eig_args(const Eigen::MatrixXd& sym, int count) {
  if (sym.rows() != sym.cols()) throw DimensionMismatch("eigensolver input must be square");
  if (count < 1 || count >= sym.rows())
    throw InvalidInput("eigenvector count must satisfy 1 <= c < n");
}

}  // namespace

Eigen::MatrixXd smallest_eigenvectors_dense(const Eigen::MatrixXd& sym, int count) {
  check_eig_args(sym, count);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("dense symmetric eigensolver failed");
  Eigen::MatrixXd vectors = es.eigenvectors().leftCols(count);
  apply_sign_convention(vectors);
  return vectors;
}

Eigen::MatrixXd smallest_eigenvectors_iterative(const Eigen::MatrixXd& sym, int count) {
  check_eig_args(sym, count);
  const Eigen::Index n = sym.rows();
  // Shift so the smallest eigenvalues of sym become the largest of shift*I - sym.
  // Gershgorin upper bound on lambda_max(sym).
  double shift = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double radius = sym.row(i).cwiseAbs().sum() - std::abs(sym(i, i));
    shift = std::max(shift, sym(i, i) + radius);
  }
  shift = shift * 1.01 + 1.0;

  const Eigen::Index block = std::min<Eigen::Index>(n - 1, count + 8);
  std::mt19937_64 rng(0x51ab5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd v(n, block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < n; ++i) v(i, j) = gauss(rng);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  v = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);

  const double tol = 1e-9 * std::max(1.0, shift);
  Eigen::MatrixXd vectors;
  for (int sweep = 0; sweep < 1000; ++sweep) {
    Eigen::MatrixXd w = shift * v - sym * v;
    Eigen::HouseholderQR<Eigen::MatrixXd> step(w);
    v = step.householderQ() * Eigen::MatrixXd::Identity(n, block);

    // Rayleigh-Ritz on the original matrix.
    Eigen::MatrixXd small = v.transpose() * (sym * v);
    small = ((small + small.transpose()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
    if (es.info() != Eigen::Success)
      throw ConvergenceFailure("Rayleigh-Ritz eigensolver failed");
    Eigen::MatrixXd ritz = v * es.eigenvectors();
    vectors = ritz.leftCols(count);
    const Eigen::VectorXd values = es.eigenvalues().head(count);

    double residual = 0.0;
    Eigen::MatrixXd r = sym * vectors - vectors * values.asDiagonal();
    for (int c = 0; c < count; ++c) residual = std::max(residual, r.col(c).norm());
    if (residual <= tol) {
      apply_sign_convention(vectors);
      return vectors;
    }
    v = ritz;
  }
  throw ConvergenceFailure("subspace iteration did not converge");
}

Eigen::MatrixXd smallest_eigenvectors(const Eigen::MatrixXd& sym, int count,
                                      Eigen::Index dense_limit) {
  if (sym.rows() <= dense_limit) return smallest_eigenvectors_dense(sym, count);
  return smallest_eigenvectors_iterative(sym, count);
}

Eigen::MatrixXd pairwise_row_distances(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  const Eigen::VectorXd sq = rows.rowwise().squaredNorm();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = sq(i) + sq(j) - 2.0 * rows.row(i).dot(rows.row(j));
      d(i, j) = std::max(v, 0.0);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) d(j, i) = d(i, j);
  return d;
}

bool is_column_stochastic(const Eigen::MatrixXd& z, double tol) {
  if (z.size() == 0) return false;
  if ((z.array() < -tol).any()) return false;
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    if (std::abs(z.col(c).sum() - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace skclust
