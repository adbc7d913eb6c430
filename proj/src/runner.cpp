#include "skclust/runner.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skclust/baselines.hpp"
#include "skclust/dataio.hpp"
#include "skclust/graph.hpp"
#include "skclust/parallel.hpp"
#include "skclust/scmk.hpp"

namespace skclust {

namespace fs = std::filesystem;

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
}

void write_trace(const std::vector<double>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  char buf[40];
  for (double v : trace) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << '\n';
  }
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  char buf[40];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      if (c) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

/// Builds the bank, going through the binary cache when a cache dir is set.
KernelBank assemble_bank(const DataMatrix& data, const RunConfig& cfg) {
  const auto entries = expand_kernel_specs(cfg.kernel_specs);
  if (entries.empty()) throw InvalidConfig("no kernel specs given");
  KernelBank bank;
  bank.kernels.resize(entries.size());
  bank.descriptors.resize(entries.size());
  const bool cache = !cfg.kernel_cache.empty();
  if (cache) ensure_dir(cfg.kernel_cache);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& entry = entries[i];
    bank.descriptors[i] = entry.descriptor;
    const std::string key_spec =
        entry.rescale ? entry.descriptor + "|rescaled" : entry.descriptor;
    std::string path;
    if (cache) {
      path = (fs::path(cfg.kernel_cache) / (kernel_cache_key(data, key_spec) + ".kbin")).string();
      if (fs::exists(path)) {
        bank.kernels[i] = load_kernel_cache(path);
        continue;
      }
    }
    KernelMatrix k = build_kernel(data, entry.descriptor);
    if (entry.rescale) k = rescale_kernel(k);
    if (cache) save_kernel_cache(k, path);
    bank.kernels[i] = std::move(k);
  }
  return bank;
}

void write_metrics_file(const MetricReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << "acc=" << format_real(report.acc) << '\n'
      << "nmi=" << format_real(report.nmi) << '\n'
      << "purity=" << format_real(report.purity) << '\n';
}

}  // namespace

std::string default_out_dir() {
  if (const char* env = std::getenv("SKCLUST_OUT_DIR"); env && *env) return env;
  return "skclust_out";
}

LabelVector load_label_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label file: " + path);
  LabelVector labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    int v;
    auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || p != line.data() + line.size())
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected an integer label");
    labels.push_back(v);
  }
  if (labels.empty()) throw ParseError("label file is empty: " + path);
  return labels;
}

void save_label_file(const LabelVector& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write label file: " + path);
  for (int v : labels) out << v << '\n';
  if (!out) throw IoError("write failed: " + path);
}

RunOutcome run_fit(const RunConfig& raw_cfg) {
  RunConfig cfg = raw_cfg;
  if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
  validate_run_config(cfg);
  ensure_dir(cfg.out_dir);

  DataMatrix data = load_csv(cfg.data_path, cfg.label_column
                                                ? std::optional<ColumnSpec>(ColumnSpec{*cfg.label_column})
                                                : std::nullopt);
  if (cfg.do_standardize) data = standardize(data);

  KernelBank bank;
  if (cfg.algo != "kmeans") {
    bank = assemble_bank(data, cfg);
    if (cfg.algo != "scmk" && bank.size() != 1)
      throw InvalidConfig(cfg.algo + " takes exactly one kernel spec, got " +
                          std::to_string(bank.size()));
    if (cfg.check_psd) {
      for (int i = 0; i < bank.size(); ++i) {
        if (!is_positive_semidefinite(bank.kernels[static_cast<std::size_t>(i)]))
          throw DegenerateData("kernel is not positive semi-definite: " +
                               bank.descriptors[static_cast<std::size_t>(i)]);
      }
    }
  }

  RunOutcome outcome;
  KeyValueFile manifest;
  manifest["run"] = config_to_section(cfg);
  KeyValueSection& result = manifest["result"];
  result["engine_version"] = SKCLUST_VERSION;
  result["n"] = std::to_string(data.n());
  result["dim"] = std::to_string(data.dim());

  if (cfg.algo == "scsk" || cfg.algo == "scmk") {
    ScmkConfig fit_cfg;
    fit_cfg.alpha = cfg.alpha;
    fit_cfg.beta = cfg.beta;
    fit_cfg.clusters = cfg.clusters;
    fit_cfg.tol = cfg.tol;
    fit_cfg.max_outer = cfg.max_outer;
    fit_cfg.seed = cfg.seed;
    fit_cfg.beta_autotune = cfg.beta_autotune;
    fit_cfg.kmeans_restarts = cfg.restarts;

    const FitResult fit = cfg.algo == "scsk" ? fit_scsk(bank.kernels[0], fit_cfg)
                                             : fit_scmk(bank, fit_cfg);
    outcome.labels = fit.labels;
    write_trace(fit.objective_trace, (fs::path(cfg.out_dir) / "objective_trace.txt").string());
    if (cfg.save_matrices) {
      write_matrix_csv(fit.similarity, (fs::path(cfg.out_dir) / "Z.csv").string());
      write_matrix_csv(fit.indicator, (fs::path(cfg.out_dir) / "P.csv").string());
    }
    result["converged"] = fit.converged ? "true" : "false";
    result["outer_iterations"] = std::to_string(fit.objective_trace.size());
    result["components_found"] = std::to_string(fit.components_found);
    result["label_source"] = to_string(fit.label_source);
    result["final_beta"] = format_real(fit.final_beta);
    result["final_objective"] = format_real(fit.final_objective);
    if (cfg.algo == "scmk") {
      std::string w;
      for (Eigen::Index i = 0; i < fit.weights.size(); ++i) {
        if (i) w += ',';
        w += format_real(fit.weights(i));
      }
      result["weights"] = w;
      std::ofstream wout((fs::path(cfg.out_dir) / "weights.txt").string());
      for (Eigen::Index i = 0; i < fit.weights.size(); ++i)
        wout << bank.descriptors[static_cast<std::size_t>(i)] << '='
             << format_real(fit.weights(i)) << '\n';
    }
  } else if (cfg.algo == "kkm") {
    KMeansConfig kcfg{cfg.clusters, cfg.restarts, 100, cfg.seed};
    const auto res = kernel_kmeans(bank.kernels[0], kcfg);
    outcome.labels = res.labels;
    result["objective"] = format_real(res.objective);
  } else if (cfg.algo == "sc") {
    KMeansConfig kcfg{cfg.clusters, cfg.restarts, 100, cfg.seed};
    outcome.labels = spectral_clustering(bank.kernels[0], cfg.clusters, kcfg);
  } else {  // kmeans
    KMeansConfig kcfg{cfg.clusters, cfg.restarts, 100, cfg.seed};
    const auto res = kmeans(data.values, kcfg);
    outcome.labels = res.labels;
    result["inertia"] = format_real(res.inertia);
  }

  if (cfg.algo != "kmeans") {
    std::string joined;
    for (std::size_t i = 0; i < bank.descriptors.size(); ++i) {
      if (i) joined += ';';
      joined += bank.descriptors[i];
    }
    result["kernel_descriptors"] = joined;
  }

  outcome.label_path = (fs::path(cfg.out_dir) / "labels.txt").string();
  save_label_file(outcome.labels, outcome.label_path);

  if (data.labels) {
    outcome.metrics = evaluate(outcome.labels, *data.labels);
    write_metrics_file(*outcome.metrics, (fs::path(cfg.out_dir) / "metrics.txt").string());
    result["acc"] = format_real(outcome.metrics->acc);
    result["nmi"] = format_real(outcome.metrics->nmi);
    result["purity"] = format_real(outcome.metrics->purity);
  }

  outcome.manifest_path = (fs::path(cfg.out_dir) / "manifest.txt").string();
  write_key_value_file(manifest, outcome.manifest_path);
  return outcome;
}

std::vector<SweepCell> run_sweep(const RunConfig& raw_cfg) {
  RunConfig cfg = raw_cfg;
  if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
  if (cfg.alpha_grid.empty())
    cfg.alpha_grid = {1e-5, 1e-4, 1e-3, 0.01, 0.1, 1, 10, 100};
  if (cfg.beta_grid.empty()) cfg.beta_grid = {1e-6, 1e-5};
  validate_run_config(cfg);
  if (!cfg.label_column)
    throw InvalidConfig("sweep needs ground-truth labels to report metrics");
  ensure_dir(cfg.out_dir);

  const std::size_t cells = cfg.alpha_grid.size() * cfg.beta_grid.size();
  std::vector<SweepCell> rows(cells);

  parallel_for(
      cells,
      [&](std::size_t cell) {
        const std::size_t ai = cell / cfg.beta_grid.size();
        const std::size_t bi = cell % cfg.beta_grid.size();
        SweepCell& row = rows[cell];
        row.alpha = cfg.alpha_grid[ai];
        row.beta = cfg.beta_grid[bi];
        RunConfig cell_cfg = cfg;
        cell_cfg.alpha = row.alpha;
        cell_cfg.beta = row.beta;
        cell_cfg.alpha_grid.clear();
        cell_cfg.beta_grid.clear();
        cell_cfg.jobs = 1;
        cell_cfg.out_dir = (fs::path(cfg.out_dir) /
                            ("cell_a" + std::to_string(ai) + "_b" + std::to_string(bi)))
                               .string();
        try {
          const RunOutcome outcome = run_fit(cell_cfg);
          row.metrics = outcome.metrics;
          row.status = "ok";
        } catch (const EngineError& e) {
          row.status = std::string("failed:") + to_string(e.category());
        }
      },
      static_cast<unsigned>(cfg.jobs));

  std::ofstream out((fs::path(cfg.out_dir) / "results.csv").string());
  if (!out) throw IoError("cannot write sweep results");
  out << "alpha,beta,acc,nmi,purity,status\n";
  for (const auto& row : rows) {
    out << format_real(row.alpha) << ',' << format_real(row.beta) << ',';
    if (row.metrics) {
      out << format_real(row.metrics->acc) << ',' << format_real(row.metrics->nmi) << ','
          << format_real(row.metrics->purity);
    } else {
      out << "nan,nan,nan";
    }
    out << ',' << row.status << '\n';
  }
  return rows;
}

MetricReport run_eval(const std::string& pred_path, const std::string& truth_path,
                      const std::string& out_dir, NmiNormalization norm) {
  const LabelVector pred = load_label_file(pred_path);
  const LabelVector truth = load_label_file(truth_path);
  const MetricReport report = evaluate(pred, truth, norm);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_metrics_file(report, (fs::path(out_dir) / "metrics.txt").string());
  }
  return report;
}

std::vector<std::string> run_kernel_bank(const RunConfig& raw_cfg) {
  RunConfig cfg = raw_cfg;
  if (cfg.kernel_specs.empty()) cfg.kernel_specs = {"bank:standard"};
  if (cfg.kernel_cache.empty()) {
    cfg.kernel_cache =
        (fs::path(cfg.out_dir.empty() ? default_out_dir() : cfg.out_dir) / "kernel_cache")
            .string();
  }
  if (cfg.data_path.empty()) throw InvalidConfig("data path is required");
  DataMatrix data = load_csv(cfg.data_path, cfg.label_column
                                                ? std::optional<ColumnSpec>(ColumnSpec{*cfg.label_column})
                                                : std::nullopt);
  if (cfg.do_standardize) data = standardize(data);
  const KernelBank bank = assemble_bank(data, cfg);
  if (cfg.check_psd) {
    for (int i = 0; i < bank.size(); ++i) {
      if (!is_positive_semidefinite(bank.kernels[static_cast<std::size_t>(i)]))
        throw DegenerateData("kernel is not positive semi-definite: " +
                             bank.descriptors[static_cast<std::size_t>(i)]);
    }
  }
  return bank.descriptors;
}

}  // namespace skclust
