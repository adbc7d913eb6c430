#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "skclust/dataio.hpp"
#include "skclust/kernels.hpp"

namespace skclust {

struct KMeansConfig {
  int k = 2;
  int restarts = 20;
  int max_iter = 100;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  LabelVector labels;
  double inertia = 0.0;
  Eigen::MatrixXd centroids;  // k x D
};

/// Lloyd iterations from k-means++ starts; best inertia over restarts.
KMeansResult kmeans(const Eigen::MatrixXd& points, const KMeansConfig& cfg);

struct KernelKMeansResult {
  LabelVector labels;
  double objective = 0.0;  // sum of squared feature-space distances to centroids
};

/// Kernel-space Lloyd iterations. With a linear kernel this follows the same
/// trajectory as kmeans on the raw points for the same seed.
KernelKMeansResult kernel_kmeans(const KernelMatrix& kernel, const KMeansConfig& cfg);

/// Laplacian of the affinity, c smallest eigenvectors, k-means on the rows.
LabelVector spectral_clustering(const KernelMatrix& affinity, int c, const KMeansConfig& cfg);

}  // namespace skclust
