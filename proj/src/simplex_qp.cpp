#include "skclust/simplex_qp.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace skclust {

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw InvalidInput("cannot project an empty vector");
  std::vector<double> u(v.data(), v.data() + n);
  std::stable_sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += u[static_cast<std::size_t>(j)];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - candidate > 0.0) tau = candidate;
  }
  return (v.array() - tau).max(0.0);
}

double qp_objective(const ColumnQp& qp, const Eigen::VectorXd& z) {
  if (z.size() != qp.linear.size() || qp.quadratic.rows() != z.size() ||
      qp.quadratic.cols() != z.size())
    throw DimensionMismatch("qp_objective: dimension mismatch");
  return z.dot(qp.quadratic * z) + qp.linear.dot(z);
}

double simplex_kkt_residual(const Eigen::VectorXd& gradient, const Eigen::VectorXd& z) {
  double support_min = std::numeric_limits<double>::infinity();
  double support_max = -std::numeric_limits<double>::infinity();
  double zero_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (z(j) > 0.0) {
      support_min = std::min(support_min, gradient(j));
      support_max = std::max(support_max, gradient(j));
    } else {
      zero_min = std::min(zero_min, gradient(j));
    }
  }
  double residual = support_max - support_min;
  if (std::isfinite(zero_min)) residual = std::max(residual, support_max - zero_min);
  return std::max(residual, 0.0);
}

double estimate_gradient_lipschitz(const Eigen::MatrixXd& q) {
  const Eigen::Index n = q.rows();
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss(rng);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd w = q * v;
    const double norm = w.norm();
    if (norm == 0.0) break;
    const double next = v.dot(w);
    v = w / norm;
    if (it > 4 && std::abs(next - lambda) <= 1e-8 * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  // Inflate slightly; the step size must not exceed 1/L.
  return std::max(2.0 * std::abs(lambda) * 1.02, 1e-300);
}

namespace {

// Active-set finisher seeded with the support of the current iterate: solve
// the equality-constrained problem on the support face exactly, drop negative
// coordinates, pull in coordinates whose gradient undercuts the face
// multiplier, and accept only a verified KKT point. Returns false when the
// pass budget runs out; the first-order iteration then just continues.
bool try_face_solve(const ColumnQp& qp, const Eigen::VectorXd& z, double tol,
                    Eigen::VectorXd& out, double& out_residual) {
  const Eigen::Index n = z.size();
  std::vector<Eigen::Index> support;
  std::vector<char> in_support(static_cast<std::size_t>(n), 0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (z(j) > 0.0) {
      support.push_back(j);
      in_support[static_cast<std::size_t>(j)] = 1;
    }
  }
  if (support.empty()) return false;

  for (int pass = 0; pass < 60; ++pass) {
    const Eigen::Index s = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd bordered(s + 1, s + 1);
    Eigen::VectorXd rhs(s + 1);
    for (Eigen::Index a = 0; a < s; ++a) {
      for (Eigen::Index b = 0; b < s; ++b)
        bordered(a, b) = 2.0 * qp.quadratic(support[static_cast<std::size_t>(a)],
                                            support[static_cast<std::size_t>(b)]);
      bordered(a, s) = 1.0;
      bordered(s, a) = 1.0;
      rhs(a) = -qp.linear(support[static_cast<std::size_t>(a)]);
    }
    bordered(s, s) = 0.0;
    rhs(s) = 1.0;

    const Eigen::VectorXd sol = Eigen::PartialPivLU<Eigen::MatrixXd>(bordered).solve(rhs);
    if (!sol.allFinite()) return false;

    // Drop strictly negative coordinates and re-solve on the smaller face.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index a = 0; a < s; ++a) {
      if (sol(a) >= -1e-12) keep.push_back(support[static_cast<std::size_t>(a)]);
    }
    if (keep.empty()) return false;
    if (static_cast<Eigen::Index>(keep.size()) != s) {
      for (Eigen::Index j : support) in_support[static_cast<std::size_t>(j)] = 0;
      for (Eigen::Index j : keep) in_support[static_cast<std::size_t>(j)] = 1;
      support.swap(keep);
      continue;
    }

    Eigen::VectorXd candidate = Eigen::VectorXd::Zero(n);
    for (Eigen::Index a = 0; a < s; ++a)
      candidate(support[static_cast<std::size_t>(a)]) = std::max(sol(a), 0.0);
    const double total = candidate.sum();
    if (!(total > 0.0)) return false;
    candidate /= total;

    // Pull in the worst violator among the zero coordinates, if any.
    const Eigen::VectorXd grad = 2.0 * (qp.quadratic * candidate) + qp.linear;
    const double face_value = -sol(s);
    Eigen::Index worst = -1;
    double worst_gap = -0.5 * tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (in_support[static_cast<std::size_t>(j)]) continue;
      const double gap = grad(j) - face_value;
      if (gap < worst_gap) {
        worst_gap = gap;
        worst = j;
      }
    }
    if (worst >= 0) {
      support.push_back(worst);
      in_support[static_cast<std::size_t>(worst)] = 1;
      continue;
    }

    const double residual = simplex_kkt_residual(grad, candidate);
    if (residual > tol) return false;
    out = std::move(candidate);
    out_residual = residual;
    return true;
  }
  return false;
}

}  // namespace

QpSolution solve_column_qp(const ColumnQp& qp, double tol, int max_iter,
                           const Eigen::VectorXd* warm_start) {
  const Eigen::Index n = qp.linear.size();
  if (qp.quadratic.rows() != n || qp.quadratic.cols() != n)
    throw DimensionMismatch("solve_column_qp: Q must be n x n");
  if (!(tol > 0) || max_iter < 1) throw InvalidConfig("solve_column_qp: bad tol/max_iter");

  const double lip = qp.lipschitz > 0 ? qp.lipschitz : estimate_gradient_lipschitz(qp.quadratic);
  double step = 1.0 / lip;

  Eigen::VectorXd z = warm_start ? project_simplex(*warm_start)
                                 : Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double fz = qp_objective(qp, z);
  Eigen::VectorXd y = z;
  Eigen::VectorXd z_prev = z;
  double momentum = 1.0;

  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_z = z;
  Eigen::VectorXd grad(n);

  for (int it = 1; it <= max_iter; ++it) {
    grad.noalias() = 2.0 * (qp.quadratic * y);
    grad += qp.linear;
    Eigen::VectorXd cand = project_simplex(y - step * grad);
    double fcand = qp_objective(qp, cand);

    // Rounding noise floor for the monotone check: real descent below this
    // scale is invisible in the objective value itself.
    const double noise = 4e-15 * (1.0 + std::abs(fz));
    if (fcand > fz + noise) {
      // Monotone safeguard: restart momentum, take a plain projected step
      // (descent holds for it up to rounding with step <= 1/L).
      grad.noalias() = 2.0 * (qp.quadratic * z);
      grad += qp.linear;
      cand = project_simplex(z - step * grad);
      fcand = qp_objective(qp, cand);
      momentum = 1.0;
    }
    // Adaptive restart when momentum opposes the gradient mapping direction.
    if ((y - cand).dot(cand - z) > 0.0) momentum = 1.0;

    z_prev.swap(z);
    z = cand;
    fz = fcand;

    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    y = z + ((momentum - 1.0) / next_momentum) * (z - z_prev);
    momentum = next_momentum;

    grad.noalias() = 2.0 * (qp.quadratic * z);
    grad += qp.linear;
    const double residual = simplex_kkt_residual(grad, z);
    if (residual < best_residual) {
      best_residual = residual;
      best_z = z;
    }
    if (residual <= tol) return {z, residual, it};

    // Once the active set settles, the restricted problem has a closed-form
    // answer; try it periodically instead of grinding out first-order steps.
    // The early attempt is gated on support size to keep the dense solve cheap.
    const Eigen::Index support_size = (z.array() > 0.0).count();
    if ((it == 3 && support_size <= 512) || it % 25 == 0) {
      Eigen::VectorXd exact;
      double exact_residual;
      if (try_face_solve(qp, z, tol, exact, exact_residual) &&
          qp_objective(qp, exact) <= fz + 4e-15 * (1.0 + std::abs(fz))) {
        return {exact, exact_residual, it};
      }
    }
  }

  {
    Eigen::VectorXd exact;
    double exact_residual;
    if (try_face_solve(qp, best_z, tol, exact, exact_residual) &&
        qp_objective(qp, exact) <= fz + 4e-15 * (1.0 + std::abs(fz))) {
      return {exact, exact_residual, max_iter};
    }
  }

  throw NotConverged("column QP hit max_iter=" + std::to_string(max_iter) +
                         " with KKT residual " + std::to_string(best_residual),
                     best_z, best_residual);
}

}  // namespace skclust
