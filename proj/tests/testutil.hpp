#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "skclust/dataio.hpp"
#include "skclust/metrics.hpp"
#include "skclust/simplex_qp.hpp"

namespace testutil {

/// Isotropic Gaussian blobs with per-blob centers and ground-truth labels.
inline skclust::DataMatrix make_blobs(const std::vector<int>& counts,
                                      const std::vector<std::vector<double>>& centers,
                                      double sigma, std::uint64_t seed) {
  const int total = std::accumulate(counts.begin(), counts.end(), 0);
  const int dim = static_cast<int>(centers.front().size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  skclust::DataMatrix data;
  data.values.resize(total, dim);
  skclust::LabelVector labels(static_cast<std::size_t>(total));
  int row = 0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    for (int i = 0; i < counts[b]; ++i, ++row) {
      for (int d = 0; d < dim; ++d) data.values(row, d) = centers[b][d] + gauss(rng);
      labels[static_cast<std::size_t>(row)] = static_cast<int>(b);
    }
  }
  data.labels = labels;
  return data;
}

/// Two interleaved half-circles.
inline skclust::DataMatrix make_moons(int per_moon, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  skclust::DataMatrix data;
  data.values.resize(2 * per_moon, 2);
  skclust::LabelVector labels(static_cast<std::size_t>(2 * per_moon));
  for (int i = 0; i < per_moon; ++i) {
    const double t = angle(rng);
    data.values(i, 0) = std::cos(t) + gauss(rng);
    data.values(i, 1) = std::sin(t) + gauss(rng);
    labels[static_cast<std::size_t>(i)] = 0;
    const double s = angle(rng);
    data.values(per_moon + i, 0) = 1.0 - std::cos(s) + gauss(rng);
    data.values(per_moon + i, 1) = 0.5 - std::sin(s) + gauss(rng);
    labels[static_cast<std::size_t>(per_moon + i)] = 1;
  }
  data.labels = labels;
  return data;
}

/// Two concentric rings.
inline skclust::DataMatrix make_rings(int per_ring, double r_inner, double r_outer, double noise,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  skclust::DataMatrix data;
  data.values.resize(2 * per_ring, 2);
  skclust::LabelVector labels(static_cast<std::size_t>(2 * per_ring));
  for (int i = 0; i < per_ring; ++i) {
    double t = angle(rng);
    double r = r_inner + gauss(rng);
    data.values(i, 0) = r * std::cos(t);
    data.values(i, 1) = r * std::sin(t);
    labels[static_cast<std::size_t>(i)] = 0;
    t = angle(rng);
    r = r_outer + gauss(rng);
    data.values(per_ring + i, 0) = r * std::cos(t);
    data.values(per_ring + i, 1) = r * std::sin(t);
    labels[static_cast<std::size_t>(per_ring + i)] = 1;
  }
  data.labels = labels;
  return data;
}

/// Random matrix with orthonormal columns (thin Q of a Gaussian matrix).
inline Eigen::MatrixXd random_orthonormal(Eigen::Index n, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(n, c);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < c; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, c);
}

/// Column-stochastic matrix whose support is confined to diagonal blocks.
inline Eigen::MatrixXd block_similarity(const std::vector<int>& block_sizes,
                                        std::uint64_t seed) {
  const int n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  int offset = 0;
  for (int size : block_sizes) {
    for (int j = 0; j < size; ++j) {
      Eigen::VectorXd col(size);
      for (int i = 0; i < size; ++i) col(i) = uniform(rng);
      z.block(offset, offset + j, size, 1) = skclust::project_simplex(col);
    }
    offset += size;
  }
  return z;
}

/// Random symmetric positive semi-definite matrix A^T A (normalized).
inline Eigen::MatrixXd random_psd(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::MatrixXd k = a.transpose() * a / static_cast<double>(n);
  return ((k + k.transpose()) / 2.0).eval();
}

/// Exhaustive simplex grid search for n <= 3 variables; returns the best
/// objective found. Independent of the iterative solver.
inline double grid_search_qp(const Eigen::MatrixXd& q, const Eigen::VectorXd& b, double step) {
  const Eigen::Index n = b.size();
  auto value = [&](const Eigen::VectorXd& z) {
    double quad = 0.0, lin = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      lin += b(i) * z(i);
      for (Eigen::Index j = 0; j < n; ++j) quad += z(i) * q(i, j) * z(j);
    }
    return quad + lin;
  };
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd z(n);
  if (n == 1) {
    z(0) = 1.0;
    return value(z);
  }
  const int ticks = static_cast<int>(std::lround(1.0 / step));
  if (n == 2) {
    for (int i = 0; i <= ticks; ++i) {
      z(0) = static_cast<double>(i) / ticks;
      z(1) = 1.0 - z(0);
      best = std::min(best, value(z));
    }
    return best;
  }
  for (int i = 0; i <= ticks; ++i) {
    for (int j = 0; j <= ticks - i; ++j) {
      z(0) = static_cast<double>(i) / ticks;
      z(1) = static_cast<double>(j) / ticks;
      z(2) = 1.0 - z(0) - z(1);
      best = std::min(best, value(z));
    }
  }
  return best;
}

/// Brute-force clustering accuracy: max over all bijections between padded
/// cluster id sets. Only feasible for small cluster counts.
inline double brute_force_accuracy(const skclust::LabelVector& pred,
                                   const skclust::LabelVector& truth) {
  const Eigen::MatrixXi table = skclust::contingency_table(pred, truth);
  const int side = static_cast<int>(std::max(table.rows(), table.cols()));
  std::vector<int> perm(static_cast<std::size_t>(side));
  std::iota(perm.begin(), perm.end(), 0);
  long long best = 0;
  do {
    long long matched = 0;
    for (int r = 0; r < table.rows(); ++r) {
      const int c = perm[static_cast<std::size_t>(r)];
      if (c < table.cols()) matched += table(r, c);
    }
    best = std::max(best, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

/// Random strictly positive-definite matrix with eigenvalues in [lo, hi].
inline Eigen::MatrixXd random_pd(Eigen::Index n, double lo, double hi, std::uint64_t seed) {
  const Eigen::MatrixXd v = random_orthonormal(n, n, seed);
  std::mt19937_64 rng(seed ^ 0xabcddcbaULL);
  std::uniform_real_distribution<double> uniform(lo, hi);
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = uniform(rng);
  Eigen::MatrixXd m = v * d.asDiagonal() * v.transpose();
  return ((m + m.transpose()) / 2.0).eval();
}

inline Eigen::VectorXd random_vector(Eigen::Index n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(lo, hi);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(rng);
  return v;
}

}  // namespace testutil
