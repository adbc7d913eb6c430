#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skclust/errors.hpp"

namespace skclust {

/// Everything needed to reproduce one run. Serialized as the [run] section of
/// config files and manifests (flat key=value lines).
struct RunConfig {
  std::string algo = "scsk";  // scsk | scmk | kkm | sc | kmeans
  std::string data_path;
  std::optional<std::string> label_column;
  std::vector<std::string> kernel_specs;
  double alpha = 0.1;
  double beta = 1e-5;
  int clusters = 0;
  double tol = 1e-6;
  int max_outer = 100;
  std::uint64_t seed = 0;
  int restarts = 20;
  std::string out_dir;
  bool beta_autotune = false;
  bool check_psd = false;
  bool do_standardize = false;
  bool save_matrices = false;
  int jobs = 1;
  std::string kernel_cache;
  std::vector<double> alpha_grid;  // sweep only
  std::vector<double> beta_grid;   // sweep only
};

/// Flat key=value file with [section] headers and '#' comments.
using KeyValueSection = std::map<std::string, std::string>;
using KeyValueFile = std::map<std::string, KeyValueSection>;

KeyValueFile parse_key_value_file(const std::string& path);
void write_key_value_file(const KeyValueFile& contents, const std::string& path);

/// Reads the [run] section of a config file into a RunConfig.
RunConfig config_from_file(const std::string& path);

/// Applies the [run] keys present in `section` on top of `base`.
void apply_config_section(const KeyValueSection& section, RunConfig& base);

/// Serializes a RunConfig to the [run] section representation.
KeyValueSection config_to_section(const RunConfig& cfg);

void validate_run_config(const RunConfig& cfg);

std::vector<double> parse_real_list(const std::string& csv);
std::string format_real_list(const std::vector<double>& values);

}  // namespace skclust
