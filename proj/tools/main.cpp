#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "skclust/runner.hpp"

namespace {

using skclust::RunConfig;

int exit_code_for(skclust::ErrorCategory category) {
  switch (category) {
    case skclust::ErrorCategory::not_converged:
    case skclust::ErrorCategory::convergence_failure:
    case skclust::ErrorCategory::degenerate_data:
      return 3;
    default:
      return 2;
  }
}

// Options not passed on the command line keep the values loaded from
// --config, so flags override the file.
void add_run_options(CLI::App* cmd, RunConfig& cfg, std::string& label_flag,
                     std::vector<std::string>& kernel_flags, std::string& config_path) {
  cmd->add_option("--config", config_path, "Load defaults from a key=value config file");
  cmd->add_option("--algo", cfg.algo, "Algorithm: scsk | scmk | kkm | sc | kmeans");
  cmd->add_option("--data", cfg.data_path, "Dataset CSV path");
  cmd->add_option("--labels", label_flag,
                  "Label column: zero-based index (negative counts from the end) or header name");
  cmd->add_option("--kernel", kernel_flags,
                  "Kernel spec (repeatable): gaussian:t=<real> | linear | poly:a=<0|1>,b=<int> | "
                  "bank:standard");
  cmd->add_option("--alpha", cfg.alpha, "Similarity regularization weight");
  cmd->add_option("--beta", cfg.beta, "Graph-rank regularization weight");
  cmd->add_option("--c", cfg.clusters, "Number of clusters");
  cmd->add_option("--tol", cfg.tol, "Relative objective tolerance");
  cmd->add_option("--max-outer", cfg.max_outer, "Maximum outer iterations");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--restarts", cfg.restarts, "k-means restarts");
  cmd->add_option("--out", cfg.out_dir, "Output directory (default $SKCLUST_OUT_DIR)");
  cmd->add_flag("--beta-autotune", cfg.beta_autotune,
                "Adjust beta until the learned graph has c components");
  cmd->add_flag("--check-psd", cfg.check_psd, "Validate kernels are positive semi-definite");
  cmd->add_flag("--standardize", cfg.do_standardize, "Standardize features before fitting");
  cmd->add_flag("--save-matrices", cfg.save_matrices, "Write learned Z and P to CSV");
  cmd->add_option("--jobs", cfg.jobs, "Parallel sweep cells");
  cmd->add_option("--kernel-cache", cfg.kernel_cache, "Kernel cache directory");
}

void finalize(RunConfig& cfg, const std::string& label_flag,
              const std::vector<std::string>& kernel_flags) {
  if (!label_flag.empty()) cfg.label_column = label_flag;
  if (!kernel_flags.empty()) cfg.kernel_specs = kernel_flags;
}

void print_metrics(const skclust::MetricReport& report) {
  std::printf("metric     value\n");
  std::printf("acc        %.6f\n", report.acc);
  std::printf("nmi        %.6f\n", report.nmi);
  std::printf("purity     %.6f\n", report.purity);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skclust: joint similarity learning and kernel clustering"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "Load defaults from a key=value config file")
      ->expected(1);

  RunConfig cfg;
  std::string label_flag;
  std::vector<std::string> kernel_flags;

  auto* fit = app.add_subcommand("fit", "Fit a clustering model and write artifacts");
  add_run_options(fit, cfg, label_flag, kernel_flags, config_path);

  auto* sweep = app.add_subcommand("sweep", "Grid sweep over alpha and beta");
  add_run_options(sweep, cfg, label_flag, kernel_flags, config_path);
  std::string alpha_grid_flag, beta_grid_flag;
  sweep->add_option("--alpha-grid", alpha_grid_flag, "Comma-separated alpha values");
  sweep->add_option("--beta-grid", beta_grid_flag, "Comma-separated beta values");

  auto* eval = app.add_subcommand("eval", "Score a predicted labeling against ground truth");
  std::string pred_path, truth_path, eval_out, nmi_norm = "geometric";
  eval->add_option("--pred", pred_path, "Predicted labels, one integer per line")->required();
  eval->add_option("--truth", truth_path, "Ground-truth labels")->required();
  eval->add_option("--out", eval_out, "Optional directory for metrics.txt");
  eval->add_option("--nmi-norm", nmi_norm, "NMI normalization: geometric | arithmetic")
      ->check(CLI::IsMember({"geometric", "arithmetic"}));

  auto* bank = app.add_subcommand("kernel-bank", "Precompute kernels into the binary cache");
  add_run_options(bank, cfg, label_flag, kernel_flags, config_path);

  // Two-phase parse: pull --config first so file values become defaults that
  // explicit flags then override.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        cfg = skclust::config_from_file(argv[i + 1]);
      } catch (const skclust::EngineError& e) {
        std::fprintf(stderr, "error[%s]: %s\n", to_string(e.category()), e.what());
        return exit_code_for(e.category());
      }
      break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit->parsed()) {
      finalize(cfg, label_flag, kernel_flags);
      const skclust::RunOutcome outcome = skclust::run_fit(cfg);
      std::printf("labels: %s\n", outcome.label_path.c_str());
      std::printf("manifest: %s\n", outcome.manifest_path.c_str());
      if (outcome.metrics) print_metrics(*outcome.metrics);
    } else if (sweep->parsed()) {
      finalize(cfg, label_flag, kernel_flags);
      if (!alpha_grid_flag.empty()) cfg.alpha_grid = skclust::parse_real_list(alpha_grid_flag);
      if (!beta_grid_flag.empty()) cfg.beta_grid = skclust::parse_real_list(beta_grid_flag);
      const auto rows = skclust::run_sweep(cfg);
      std::printf("alpha,beta,acc,nmi,purity,status\n");
      for (const auto& row : rows) {
        if (row.metrics) {
          std::printf("%g,%g,%.6f,%.6f,%.6f,%s\n", row.alpha, row.beta, row.metrics->acc,
                      row.metrics->nmi, row.metrics->purity, row.status.c_str());
        } else {
          std::printf("%g,%g,nan,nan,nan,%s\n", row.alpha, row.beta, row.status.c_str());
        }
      }
    } else if (eval->parsed()) {
      const skclust::MetricReport report = skclust::run_eval(
          pred_path, truth_path, eval_out,
          nmi_norm == "arithmetic" ? skclust::NmiNormalization::arithmetic
                                   : skclust::NmiNormalization::geometric);
      print_metrics(report);
    } else if (bank->parsed()) {
      finalize(cfg, label_flag, kernel_flags);
      const auto descriptors = skclust::run_kernel_bank(cfg);
      for (const auto& d : descriptors) std::printf("%s\n", d.c_str());
    }
  } catch (const skclust::EngineError& e) {
    std::fprintf(stderr, "error[%s]: %s\n", to_string(e.category()), e.what());
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
