#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "skclust/dataio.hpp"
#include "skclust/errors.hpp"

namespace skclust {

/// Symmetric positive semi-definite Gram matrix.
struct KernelMatrix {
  Eigen::MatrixXd gram;
  Eigen::Index n() const { return gram.rows(); }
};

/// Ordered collection of kernels over the same samples, with the spec string
/// that produced each one.
struct KernelBank {
  std::vector<KernelMatrix> kernels;
  std::vector<std::string> descriptors;
  int size() const { return static_cast<int>(kernels.size()); }
  Eigen::Index n() const { return kernels.empty() ? 0 : kernels.front().n(); }
};

/// Squared Euclidean distances between sample rows (exact symmetry, zero diagonal).
Eigen::MatrixXd pairwise_squared_distances(const Eigen::MatrixXd& rows);

/// exp(-||x-y||^2 / (t * d_max^2)) with d_max the largest pairwise distance.
KernelMatrix gaussian_kernel(const DataMatrix& data, double t);

/// Plain inner products X * X^T.
KernelMatrix linear_kernel(const DataMatrix& data);

/// (a + x^T y)^b entrywise.
KernelMatrix polynomial_kernel(const DataMatrix& data, double a, int b);

/// Divides every entry by the matrix maximum so entries land in [min/max, 1].
KernelMatrix rescale_kernel(const KernelMatrix& k);

/// The fixed 12-kernel bank: Gaussian t in {0.01,0.05,0.1,1,10,50,100},
/// linear, polynomial (a,b) in {0,1}x{2,4}; every member rescaled.
KernelBank build_standard_bank(const DataMatrix& data);

/// Convex combination sum_i w_i K_i (weights must be nonnegative).
KernelMatrix combine(const KernelBank& bank, const Eigen::VectorXd& weights);

/// Parses one kernel spec: gaussian:t=<real> | linear | poly:a=<0|1>,b=<int>.
KernelMatrix build_kernel(const DataMatrix& data, const std::string& spec);

/// One concrete kernel to build; bank members carry rescale=true.
struct KernelSpecEntry {
  std::string descriptor;
  bool rescale = false;
};

/// Expands spec strings, unfolding bank:standard into its 12 members.
std::vector<KernelSpecEntry> expand_kernel_specs(const std::vector<std::string>& specs);

/// Expands specs (including bank:standard) into a bank.
KernelBank build_bank(const DataMatrix& data, const std::vector<std::string>& specs);

bool is_symmetric(const Eigen::MatrixXd& m, double tol = 1e-10);

/// Smallest eigenvalue >= -tol_scale * trace / n.
bool is_positive_semidefinite(const KernelMatrix& k, double tol_scale = 1e-8);

/// Binary kernel cache, keyed by a hash of the data bytes plus the spec string.
std::string kernel_cache_key(const DataMatrix& data, const std::string& spec);
void save_kernel_cache(const KernelMatrix& k, const std::string& path);
KernelMatrix load_kernel_cache(const std::string& path);

}  // namespace skclust
