#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skclust/config.hpp"
#include "skclust/metrics.hpp"
#include "skclust/scsk.hpp"

namespace skclust {

/// Default output directory: $SKCLUST_OUT_DIR or ./skclust_out.
std::string default_out_dir();

struct RunOutcome {
  LabelVector labels;
  std::optional<MetricReport> metrics;
  std::string label_path;
  std::string manifest_path;
};

/// Loads the dataset, builds kernels (optionally through the binary cache),
/// runs the configured algorithm and writes labels, metrics, traces and a
/// manifest under cfg.out_dir. The manifest's [run] section is itself a valid
/// config file for reproducing the run.
RunOutcome run_fit(const RunConfig& cfg);

struct SweepCell {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<MetricReport> metrics;
  std::string status;  // "ok" or "failed:<category>"
};

/// One seeded fit per (alpha, beta) grid cell; failures are recorded and the
/// sweep continues. Writes a long-format results.csv plus per-cell artifacts.
std::vector<SweepCell> run_sweep(const RunConfig& cfg);

/// Reads two label files (one integer per line) and reports metrics.
MetricReport run_eval(const std::string& pred_path, const std::string& truth_path,
                      const std::string& out_dir = "",
                      NmiNormalization norm = NmiNormalization::geometric);

/// Precomputes kernels for a dataset and stores them in the binary cache.
/// Returns the descriptors that were written.
std::vector<std::string> run_kernel_bank(const RunConfig& cfg);

/// Loads a label file: one integer per line.
LabelVector load_label_file(const std::string& path);
void save_label_file(const LabelVector& labels, const std::string& path);

}  // namespace skclust
