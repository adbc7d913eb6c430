#include "skclust/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace skclust {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
  double out;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw InvalidConfig("bad numeric value for " + key + ": '" + v + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw InvalidConfig("bad integer value for " + key + ": '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidConfig("bad boolean value for " + key + ": '" + v + "'");
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& csv) {
  std::vector<double> out;
  for (const auto& item : split_list(csv)) out.push_back(to_real("list item", item));
  return out;
}

std::string format_real_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_real(values[i]);
  }
  return out;
}

KeyValueFile parse_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  KeyValueFile file;
  std::string section = "run";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError(path + ":" + std::to_string(lineno) + ": empty key");
    file[section][key] = value;
  }
  return file;
}

void write_key_value_file(const KeyValueFile& contents, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  bool first = true;
  for (const auto& [section, entries] : contents) {
    if (!first) out << '\n';
    first = false;
    out << '[' << section << "]\n";
    for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void apply_config_section(const KeyValueSection& section, RunConfig& cfg) {
  for (const auto& [key, value] : section) {
    if (key == "algo") cfg.algo = value;
    else if (key == "data") cfg.data_path = value;
    else if (key == "labels") cfg.label_column = value;
    else if (key == "kernel") cfg.kernel_specs = split_list(value);
    else if (key == "alpha") cfg.alpha = to_real(key, value);
    else if (key == "beta") cfg.beta = to_real(key, value);
    else if (key == "c") cfg.clusters = static_cast<int>(to_int(key, value));
    else if (key == "tol") cfg.tol = to_real(key, value);
    else if (key == "max_outer") cfg.max_outer = static_cast<int>(to_int(key, value));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "restarts") cfg.restarts = static_cast<int>(to_int(key, value));
    else if (key == "out") cfg.out_dir = value;
    else if (key == "beta_autotune") cfg.beta_autotune = to_bool(key, value);
    else if (key == "check_psd") cfg.check_psd = to_bool(key, value);
    else if (key == "standardize") cfg.do_standardize = to_bool(key, value);
    else if (key == "save_matrices") cfg.save_matrices = to_bool(key, value);
    else if (key == "jobs") cfg.jobs = static_cast<int>(to_int(key, value));
    else if (key == "kernel_cache") cfg.kernel_cache = value;
    else if (key == "alpha_grid") cfg.alpha_grid = parse_real_list(value);
    else if (key == "beta_grid") cfg.beta_grid = parse_real_list(value);
    else throw InvalidConfig("unknown config key: " + key);
  }
}

RunConfig config_from_file(const std::string& path) {
  const KeyValueFile file = parse_key_value_file(path);
  RunConfig cfg;
  const auto it = file.find("run");
  if (it == file.end()) throw InvalidConfig("config file has no [run] section: " + path);
  apply_config_section(it->second, cfg);
  return cfg;
}

KeyValueSection config_to_section(const RunConfig& cfg) {
  KeyValueSection s;
  s["algo"] = cfg.algo;
  s["data"] = cfg.data_path;
  if (cfg.label_column) s["labels"] = *cfg.label_column;
  if (!cfg.kernel_specs.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < cfg.kernel_specs.size(); ++i) {
      if (i) joined += ',';
      joined += cfg.kernel_specs[i];
    }
    s["kernel"] = joined;
  }
  s["alpha"] = format_real(cfg.alpha);
  s["beta"] = format_real(cfg.beta);
  s["c"] = std::to_string(cfg.clusters);
  s["tol"] = format_real(cfg.tol);
  s["max_outer"] = std::to_string(cfg.max_outer);
  s["seed"] = std::to_string(cfg.seed);
  s["restarts"] = std::to_string(cfg.restarts);
  s["out"] = cfg.out_dir;
  s["beta_autotune"] = cfg.beta_autotune ? "true" : "false";
  s["check_psd"] = cfg.check_psd ? "true" : "false";
  s["standardize"] = cfg.do_standardize ? "true" : "false";
  s["save_matrices"] = cfg.save_matrices ? "true" : "false";
  s["jobs"] = std::to_string(cfg.jobs);
  if (!cfg.kernel_cache.empty()) s["kernel_cache"] = cfg.kernel_cache;
  if (!cfg.alpha_grid.empty()) s["alpha_grid"] = format_real_list(cfg.alpha_grid);
  if (!cfg.beta_grid.empty()) s["beta_grid"] = format_real_list(cfg.beta_grid);
  return s;
}

void validate_run_config(const RunConfig& cfg) {
  static const char* algos[] = {"scsk", "scmk", "kkm", "sc", "kmeans"};
  if (std::find(std::begin(algos), std::end(algos), cfg.algo) == std::end(algos))
    throw InvalidConfig("unknown algorithm: " + cfg.algo);
  if (cfg.data_path.empty()) throw InvalidConfig("data path is required");
  if (cfg.clusters < 1) throw InvalidConfig("cluster count c is required and must be >= 1");
  if (cfg.algo != "kmeans" && cfg.kernel_specs.empty())
    throw InvalidConfig("a kernel spec is required for algorithm " + cfg.algo);
  if ((cfg.algo == "scsk" || cfg.algo == "scmk") && (!(cfg.alpha > 0) || !(cfg.beta > 0)))
    throw InvalidConfig("alpha and beta must be positive");
  if (cfg.jobs < 1) throw InvalidConfig("jobs must be >= 1");
  if (cfg.restarts < 1) throw InvalidConfig("restarts must be >= 1");
}

}  // namespace skclust
