#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skclust/baselines.hpp"
#include "skclust/dataio.hpp"
#include "skclust/graph.hpp"
#include "skclust/kernels.hpp"
#include "skclust/metrics.hpp"
#include "skclust/scmk.hpp"
#include "skclust/scsk.hpp"
#include "skclust/simplex_qp.hpp"

namespace py = pybind11;
using namespace skclust;

namespace {

DataMatrix wrap_values(const Eigen::MatrixXd& values) {
  DataMatrix d;
  d.values = values;
  return d;
}

KernelBank wrap_bank(const std::vector<Eigen::MatrixXd>& kernels) {
  KernelBank bank;
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    bank.kernels.push_back(KernelMatrix{kernels[i]});
    bank.descriptors.push_back("kernel_" + std::to_string(i));
  }
  return bank;
}

ScmkConfig make_config(double alpha, double beta, int clusters, double tol, int max_outer,
                       std::uint64_t seed, bool beta_autotune, int restarts) {
  ScmkConfig cfg;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.clusters = clusters;
  cfg.tol = tol;
  cfg.max_outer = max_outer;
  cfg.seed = seed;
  cfg.beta_autotune = beta_autotune;
  cfg.kmeans_restarts = restarts;
  return cfg;
}

void register_errors(py::module_& m) {
  static py::exception<EngineError> base(m, "EngineError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const EngineError& e) {
      py::set_error(base, e.what());
    }
  });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint similarity learning and kernel clustering";
  register_errors(m);

  m.def(
      "load_csv",
      [](const std::string& path, const std::optional<std::string>& label_column) {
        const DataMatrix d = load_csv(
            path, label_column ? std::optional<ColumnSpec>(ColumnSpec{*label_column})
                               : std::nullopt);
        return py::make_tuple(d.values, d.labels);
      },
      py::arg("path"), py::arg("label_column") = std::nullopt,
      "Load a CSV file; returns (values, labels-or-None)");

  m.def(
      "standardize",
      [](const Eigen::MatrixXd& values) { return standardize(wrap_values(values)).values; },
      py::arg("values"), "Zero-mean unit-variance features; constant features stay centered");

  m.def(
      "gaussian_kernel",
      [](const Eigen::MatrixXd& values, double t) {
        return gaussian_kernel(wrap_values(values), t).gram;
      },
      py::arg("values"), py::arg("t"));
  m.def(
      "linear_kernel",
      [](const Eigen::MatrixXd& values) { return linear_kernel(wrap_values(values)).gram; },
      py::arg("values"));
  m.def(
      "polynomial_kernel",
      [](const Eigen::MatrixXd& values, double a, int b) {
        return polynomial_kernel(wrap_values(values), a, b).gram;
      },
      py::arg("values"), py::arg("a"), py::arg("b"));
  m.def(
      "rescale_kernel",
      [](const Eigen::MatrixXd& gram) { return rescale_kernel(KernelMatrix{gram}).gram; },
      py::arg("gram"));
  m.def(
      "standard_bank",
      [](const Eigen::MatrixXd& values) {
        const KernelBank bank = build_standard_bank(wrap_values(values));
        std::vector<Eigen::MatrixXd> grams;
        for (const auto& k : bank.kernels) grams.push_back(k.gram);
        return py::make_tuple(grams, bank.descriptors);
      },
      py::arg("values"), "The fixed 12-kernel bank; returns (kernels, descriptors)");
  m.def(
      "combine",
      [](const std::vector<Eigen::MatrixXd>& kernels, const Eigen::VectorXd& weights) {
        return combine(wrap_bank(kernels), weights).gram;
      },
      py::arg("kernels"), py::arg("weights"));

  m.def("project_simplex", &project_simplex, py::arg("v"));
  m.def(
      "laplacian",
      [](const Eigen::MatrixXd& similarity) { return build_laplacian(similarity).matrix; },
      py::arg("similarity"));
  m.def(
      "connected_components",
      [](const Eigen::MatrixXd& similarity, double eps) {
        const ComponentResult r = connected_components(similarity, eps);
        return py::make_tuple(r.count, r.labels);
      },
      py::arg("similarity"), py::arg("eps") = 1e-8);
  m.def(
      "smallest_eigenvectors",
      [](const Eigen::MatrixXd& sym, int count) { return smallest_eigenvectors(sym, count); },
      py::arg("sym"), py::arg("count"));

  py::enum_<LabelSource>(m, "LabelSource")
      .value("components", LabelSource::components)
      .value("kmeans_on_indicator", LabelSource::kmeans_on_indicator);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("similarity", &FitResult::similarity)
      .def_readonly("indicator", &FitResult::indicator)
      .def_readonly("labels", &FitResult::labels)
      .def_readonly("objective_trace", &FitResult::objective_trace)
      .def_readonly("block_objective_trace", &FitResult::block_objective_trace)
      .def_readonly("components_found", &FitResult::components_found)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("label_source", &FitResult::label_source)
      .def_readonly("final_beta", &FitResult::final_beta)
      .def_readonly("final_objective", &FitResult::final_objective)
      .def_readonly("weights", &FitResult::weights)
      .def_readonly("weight_trace", &FitResult::weight_trace)
      .def("__repr__", [](const FitResult& r) {
        return "<FitResult components=" + std::to_string(r.components_found) +
               " converged=" + (r.converged ? std::string("True") : std::string("False")) + ">";
      });

  m.def(
      "fit_scsk",
      [](const Eigen::MatrixXd& kernel, double alpha, double beta, int clusters, double tol,
         int max_outer, std::uint64_t seed, bool beta_autotune, int restarts) {
        return fit_scsk(KernelMatrix{kernel},
                        make_config(alpha, beta, clusters, tol, max_outer, seed, beta_autotune,
                                    restarts));
      },
      py::arg("kernel"), py::arg("alpha"), py::arg("beta"), py::arg("clusters"),
      py::arg("tol") = 1e-6, py::arg("max_outer") = 100, py::arg("seed") = 0,
      py::arg("beta_autotune") = false, py::arg("restarts") = 20,
      "Alternating single-kernel similarity and indicator learning");

  m.def(
      "fit_scmk",
      [](const std::vector<Eigen::MatrixXd>& kernels, double alpha, double beta, int clusters,
         double tol, int max_outer, std::uint64_t seed, bool beta_autotune, int restarts) {
        return fit_scmk(wrap_bank(kernels),
                        make_config(alpha, beta, clusters, tol, max_outer, seed, beta_autotune,
                                    restarts));
      },
      py::arg("kernels"), py::arg("alpha"), py::arg("beta"), py::arg("clusters"),
      py::arg("tol") = 1e-6, py::arg("max_outer") = 100, py::arg("seed") = 0,
      py::arg("beta_autotune") = false, py::arg("restarts") = 20,
      "Multiple-kernel variant with a learned convex kernel combination");

  m.def(
      "kmeans",
      [](const Eigen::MatrixXd& points, int k, int restarts, int max_iter, std::uint64_t seed) {
        const KMeansResult r = kmeans(points, {k, restarts, max_iter, seed});
        return py::make_tuple(r.labels, r.inertia);
      },
      py::arg("points"), py::arg("k"), py::arg("restarts") = 20, py::arg("max_iter") = 100,
      py::arg("seed") = 0);
  m.def(
      "kernel_kmeans",
      [](const Eigen::MatrixXd& kernel, int k, int restarts, int max_iter, std::uint64_t seed) {
        const KernelKMeansResult r = kernel_kmeans(KernelMatrix{kernel}, {k, restarts, max_iter, seed});
        return py::make_tuple(r.labels, r.objective);
      },
      py::arg("kernel"), py::arg("k"), py::arg("restarts") = 20, py::arg("max_iter") = 100,
      py::arg("seed") = 0);
  m.def(
      "spectral_clustering",
      [](const Eigen::MatrixXd& affinity, int c, int restarts, int max_iter, std::uint64_t seed) {
        return spectral_clustering(KernelMatrix{affinity}, c, {c, restarts, max_iter, seed});
      },
      py::arg("affinity"), py::arg("c"), py::arg("restarts") = 20, py::arg("max_iter") = 100,
      py::arg("seed") = 0);

  m.def("accuracy", &accuracy, py::arg("pred"), py::arg("truth"));
  m.def(
      "nmi",
      [](const LabelVector& pred, const LabelVector& truth, const std::string& norm) {
        return nmi(pred, truth, norm == "arithmetic" ? NmiNormalization::arithmetic
                                                     : NmiNormalization::geometric);
      },
      py::arg("pred"), py::arg("truth"), py::arg("norm") = "geometric");
  m.def("purity", &purity, py::arg("pred"), py::arg("truth"));
  m.def(
      "evaluate",
      [](const LabelVector& pred, const LabelVector& truth) {
        const MetricReport r = evaluate(pred, truth);
        py::dict out;
        out["acc"] = r.acc;
        out["nmi"] = r.nmi;
        out["purity"] = r.purity;
        out["contingency"] = r.contingency;
        return out;
      },
      py::arg("pred"), py::arg("truth"));

#ifdef SKCLUST_VERSION
  m.attr("__version__") = SKCLUST_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
