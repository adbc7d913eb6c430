#include "skclust/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "skclust/graph.hpp"
#include "skclust/parallel.hpp"

namespace skclust {

namespace {

void check_config(const KMeansConfig& cfg, Eigen::Index n) {
  if (cfg.k < 1) throw InvalidConfig("k must be >= 1");
  if (cfg.k > n) throw InvalidConfig("k exceeds sample count");
  if (cfg.restarts < 1 || cfg.max_iter < 1)
    throw InvalidConfig("restarts and max_iter must be >= 1");
}

// Shared k-means++ seeding. dist2(i, j) returns the squared distance between
// samples i and j; both the Euclidean and the kernel variant route through
// this so their RNG consumption matches draw for draw.
template <typename Dist2>
std::vector<Eigen::Index> kmeanspp_centers(Eigen::Index n, int k, std::mt19937_64& rng,
                                           Dist2&& dist2) {
  std::vector<Eigen::Index> centers;
  centers.reserve(static_cast<std::size_t>(k));
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  centers.push_back(first(rng));
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = dist2(i, centers[0]);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    Eigen::Index pick = -1;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      const double r = u(rng);
      double cum = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double w = d2[static_cast<std::size_t>(i)];
        if (w <= 0.0) continue;
        cum += w;
        if (cum >= r) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (d2[static_cast<std::size_t>(i)] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    }
    if (pick < 0) {
      // All remaining mass is zero: duplicate points; take the lowest index
      // not already chosen.
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::find(centers.begin(), centers.end(), i) == centers.end()) {
          pick = i;
          break;
        }
      }
    }
    centers.push_back(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[static_cast<std::size_t>(i)] =
          std::min(d2[static_cast<std::size_t>(i)], dist2(i, pick));
    }
  }
  return centers;
}

struct SingleRun {
  LabelVector labels;
  double objective = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd centroids;
};

SingleRun kmeans_single(const Eigen::MatrixXd& x, int k, int max_iter, std::uint64_t seed) {
  const Eigen::Index n = x.rows();
  std::mt19937_64 rng(seed);
  auto dist2 = [&](Eigen::Index i, Eigen::Index j) {
    return (x.row(i) - x.row(j)).squaredNorm();
  };
  const auto centers = kmeanspp_centers(n, k, rng, dist2);

  Eigen::MatrixXd mu(k, x.cols());
  for (int c = 0; c < k; ++c) mu.row(c) = x.row(centers[static_cast<std::size_t>(c)]);

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> counts(static_cast<std::size_t>(k), 0);

  auto assign_all = [&](std::vector<int>& out) {
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double bestd = (x.row(i) - mu.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (x.row(i) - mu.row(c)).squaredNorm();
        if (d < bestd) {
          bestd = d;
          best = c;
        }
      }
      out[static_cast<std::size_t>(i)] = best;
    }
  };

  auto refresh_means = [&]() {
    mu.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      mu.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
      counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])]++;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0)
        mu.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
  };

  assign_all(labels);
  for (int it = 0; it < max_iter; ++it) {
    refresh_means();
    // Empty clusters: reseed with the point farthest from its own centroid.
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Eigen::Index far = -1;
      double fard = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const int li = labels[static_cast<std::size_t>(i)];
        if (counts[static_cast<std::size_t>(li)] <= 1) continue;
        const double d = (x.row(i) - mu.row(li)).squaredNorm();
        if (d > fard) {
          fard = d;
          far = i;
        }
      }
      if (far < 0) continue;
      labels[static_cast<std::size_t>(far)] = c;
      refresh_means();
    }

    std::vector<int> next(labels.size());
    assign_all(next);
    if (next == labels) break;
    labels = next;
  }

  refresh_means();
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    inertia += (x.row(i) - mu.row(labels[static_cast<std::size_t>(i)])).squaredNorm();

  return {labels, inertia, mu};
}

SingleRun kernel_kmeans_single(const Eigen::MatrixXd& gram, int k, int max_iter,
                               std::uint64_t seed) {
  const Eigen::Index n = gram.rows();
  std::mt19937_64 rng(seed);
  auto point_dist2 = [&](Eigen::Index i, Eigen::Index j) {
    return gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
  };
  const auto centers = kmeanspp_centers(n, k, rng, point_dist2);

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  Eigen::MatrixXd member_sum(n, k);  // member_sum(i, c) = sum_{j in c} K_ij
  Eigen::VectorXd cluster_sq(k);     // sum_{j,l in c} K_jl

  // Initial assignment: nearest seeding point.
  for (Eigen::Index i = 0; i < n; ++i) {
    int best = 0;
    double bestd = point_dist2(i, centers[0]);
    for (int c = 1; c < k; ++c) {
      const double d = point_dist2(i, centers[static_cast<std::size_t>(c)]);
      if (d < bestd) {
        bestd = d;
        best = c;
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
  }

  auto refresh_sums = [&]() {
    member_sum.setZero();
    cluster_sq.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (Eigen::Index j = 0; j < n; ++j) {
      const int c = labels[static_cast<std::size_t>(j)];
      counts[static_cast<std::size_t>(c)]++;
      member_sum.col(c) += gram.col(j);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      cluster_sq(labels[static_cast<std::size_t>(j)]) +=
          member_sum(j, labels[static_cast<std::size_t>(j)]);
    }
  };

  auto centroid_dist2 = [&](Eigen::Index i, int c) {
    const double m = static_cast<double>(counts[static_cast<std::size_t>(c)]);
    return gram(i, i) - 2.0 * member_sum(i, c) / m + cluster_sq(c) / (m * m);
  };

  for (int it = 0; it < max_iter; ++it) {
    refresh_sums();
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Eigen::Index far = -1;
      double fard = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const int li = labels[static_cast<std::size_t>(i)];
        if (counts[static_cast<std::size_t>(li)] <= 1) continue;
        const double d = centroid_dist2(i, li);
        if (d > fard) {
          fard = d;
          far = i;
        }
      }
      if (far < 0) continue;
      labels[static_cast<std::size_t>(far)] = c;
      refresh_sums();
    }

    std::vector<int> next(labels.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double bestd = centroid_dist2(i, 0);
      for (int c = 1; c < k; ++c) {
        const double d = centroid_dist2(i, c);
        if (d < bestd) {
          bestd = d;
          best = c;
        }
      }
      next[static_cast<std::size_t>(i)] = best;
    }
    if (next == labels) break;
    labels = next;
  }

  refresh_sums();
  double objective = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    objective += centroid_dist2(i, labels[static_cast<std::size_t>(i)]);

  return {labels, objective, Eigen::MatrixXd()};
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, const KMeansConfig& cfg) {
  check_config(cfg, points.rows());
  std::vector<SingleRun> runs(static_cast<std::size_t>(cfg.restarts));
  parallel_for(static_cast<std::size_t>(cfg.restarts), [&](std::size_t r) {
    runs[r] = kmeans_single(points, cfg.k, cfg.max_iter, derive_seed(cfg.seed, r));
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  return {runs[best].labels, runs[best].objective, runs[best].centroids};
}

KernelKMeansResult kernel_kmeans(const KernelMatrix& kernel, const KMeansConfig& cfg) {
  check_config(cfg, kernel.n());
  std::vector<SingleRun> runs(static_cast<std::size_t>(cfg.restarts));
  parallel_for(static_cast<std::size_t>(cfg.restarts), [&](std::size_t r) {
    runs[r] = kernel_kmeans_single(kernel.gram, cfg.k, cfg.max_iter, derive_seed(cfg.seed, r));
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  return {runs[best].labels, runs[best].objective};
}

LabelVector spectral_clustering(const KernelMatrix& affinity, int c, const KMeansConfig& cfg) {
  if (c < 1 || c >= affinity.n()) throw InvalidConfig("spectral clustering needs 1 <= c < n");
  const Laplacian lap = build_laplacian(affinity.gram);
  const Eigen::MatrixXd embedding = smallest_eigenvectors(lap.matrix, c);
  KMeansConfig kcfg = cfg;
  kcfg.k = c;
  return kmeans(embedding, kcfg).labels;
}

}  // namespace skclust
