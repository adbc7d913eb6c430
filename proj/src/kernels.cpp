#include "skclust/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "skclust/parallel.hpp"

namespace skclust {

namespace {

// Integer power by repeated multiplication; b is small (2 or 4 in the bank).
inline double ipow(double x, int b) {
  double r = 1.0;
  for (int i = 0; i < b; ++i) r *= x;
  return r;
}

void check_data(const DataMatrix& data) {
  if (data.n() < 2) throw EmptyDataset("kernel construction needs n >= 2");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

Eigen::MatrixXd pairwise_squared_distances(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd d(n, n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
    const Eigen::Index i = static_cast<Eigen::Index>(ii);
    d(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      d(i, j) = (rows.row(i) - rows.row(j)).squaredNorm();
    }
  });
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) d(j, i) = d(i, j);
  return d;
}

KernelMatrix gaussian_kernel(const DataMatrix& data, double t) {
  check_data(data);
  if (!(t > 0)) throw InvalidInput("gaussian kernel needs t > 0");
  Eigen::MatrixXd d2 = pairwise_squared_distances(data.values);
  const double d2max = d2.maxCoeff();
  if (d2max <= 0.0) throw DegenerateData("all samples identical: d_max = 0");
  KernelMatrix k;
  k.gram = (-d2 / (t * d2max)).array().exp();
  return k;
}

KernelMatrix linear_kernel(const DataMatrix& data) {
  check_data(data);
  KernelMatrix k;
  k.gram = data.values * data.values.transpose();
  k.gram = ((k.gram + k.gram.transpose()) / 2.0).eval();
  return k;
}

KernelMatrix polynomial_kernel(const DataMatrix& data, double a, int b) {
  check_data(data);
  if (b < 1) throw InvalidInput("polynomial kernel needs b >= 1");
  KernelMatrix k = linear_kernel(data);
  k.gram = k.gram.unaryExpr([a, b](double v) { return ipow(a + v, b); });
  return k;
}

KernelMatrix rescale_kernel(const KernelMatrix& k) {
  const double m = k.gram.maxCoeff();
  if (!(m > 0.0)) throw DegenerateData("kernel has no positive entry to rescale by");
  KernelMatrix out;
  out.gram = k.gram / m;
  return out;
}

std::vector<KernelSpecEntry> expand_kernel_specs(const std::vector<std::string>& specs) {
  static const double gaussian_ts[] = {0.01, 0.05, 0.1, 1, 10, 50, 100};
  std::vector<KernelSpecEntry> entries;
  for (const auto& spec : specs) {
    if (spec == "bank:standard") {
      for (double t : gaussian_ts) entries.push_back({"gaussian:t=" + format_real(t), true});
      entries.push_back({"linear", true});
      for (int a : {0, 1})
        for (int b : {2, 4})
          entries.push_back({"poly:a=" + std::to_string(a) + ",b=" + std::to_string(b), true});
    } else {
      entries.push_back({spec, false});
    }
  }
  return entries;
}

KernelBank build_standard_bank(const DataMatrix& data) {
  return build_bank(data, {"bank:standard"});
}

KernelMatrix combine(const KernelBank& bank, const Eigen::VectorXd& weights) {
  if (bank.size() == 0) throw DimensionMismatch("empty kernel bank");
  if (weights.size() != bank.size())
    throw DimensionMismatch("weight count " + std::to_string(weights.size()) +
                            " does not match bank size " + std::to_string(bank.size()));
  const Eigen::Index n = bank.n();
  for (const auto& k : bank.kernels) {
    if (k.n() != n) throw DimensionMismatch("bank kernels have differing dimensions");
  }
  if ((weights.array() < 0).any()) throw InvalidInput("kernel weights must be nonnegative");
  KernelMatrix out;
  out.gram = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < bank.size(); ++i) out.gram += weights(i) * bank.kernels[i].gram;
  return out;
}

KernelMatrix build_kernel(const DataMatrix& data, const std::string& spec) {
  if (spec == "linear") return linear_kernel(data);
  if (spec.rfind("gaussian:t=", 0) == 0) {
    const std::string v = spec.substr(11);
    double t;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), t);
    if (ec != std::errc() || p != v.data() + v.size())
      throw InvalidConfig("bad gaussian kernel spec: " + spec);
    return gaussian_kernel(data, t);
  }
  if (spec.rfind("poly:a=", 0) == 0) {
    double a;
    int b;
    if (std::sscanf(spec.c_str(), "poly:a=%lf,b=%d", &a, &b) != 2)
      throw InvalidConfig("bad polynomial kernel spec: " + spec);
    if (a != 0.0 && a != 1.0) throw InvalidConfig("polynomial kernel needs a in {0,1}: " + spec);
    return polynomial_kernel(data, a, b);
  }
  throw InvalidConfig("unknown kernel spec: " + spec);
}

KernelBank build_bank(const DataMatrix& data, const std::vector<std::string>& specs) {
  KernelBank bank;
  for (const auto& entry : expand_kernel_specs(specs)) {
    KernelMatrix k = build_kernel(data, entry.descriptor);
    bank.kernels.push_back(entry.rescale ? rescale_kernel(k) : std::move(k));
    bank.descriptors.push_back(entry.descriptor);
  }
  if (bank.size() == 0) throw InvalidConfig("no kernel specs given");
  return bank;
}

bool is_symmetric(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool is_positive_semidefinite(const KernelMatrix& k, double tol_scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed in PSD check");
  const double floor = -tol_scale * std::abs(k.gram.trace()) / static_cast<double>(k.n());
  return es.eigenvalues().minCoeff() >= floor;
}

namespace {

std::uint64_t fnv1a(const void* bytes, std::size_t count, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(bytes);
  for (std::size_t i = 0; i < count; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr char kCacheMagic[4] = {'S', 'K', 'C', 'K'};

}  // namespace

std::string kernel_cache_key(const DataMatrix& data, const std::string& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const Eigen::Index n = data.n(), d = data.dim();
  h = fnv1a(&n, sizeof(n), h);
  h = fnv1a(&d, sizeof(d), h);
  h = fnv1a(data.values.data(), sizeof(double) * static_cast<std::size_t>(data.values.size()), h);
  h = fnv1a(spec.data(), spec.size(), h);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void save_kernel_cache(const KernelMatrix& k, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write kernel cache: " + path);
  out.write(kCacheMagic, 4);
  const std::uint32_t version = 1;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  const std::uint64_t n = static_cast<std::uint64_t>(k.n());
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(k.gram.data()),
            static_cast<std::streamsize>(sizeof(double) * k.gram.size()));
  if (!out) throw IoError("write failed: " + path);
}

KernelMatrix load_kernel_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open kernel cache: " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t n = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!in || std::string(magic, 4) != std::string(kCacheMagic, 4) || version != 1)
    throw ParseError("bad kernel cache header: " + path);
  KernelMatrix k;
  k.gram.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  in.read(reinterpret_cast<char*>(k.gram.data()),
          static_cast<std::streamsize>(sizeof(double) * k.gram.size()));
  if (!in) throw ParseError("truncated kernel cache: " + path);
  return k;
}

}  // namespace skclust
