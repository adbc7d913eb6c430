#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "skclust/dataio.hpp"
#include "skclust/runner.hpp"
#include "testutil.hpp"

using namespace skclust;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& child = "") const {
    return child.empty() ? path.string() : (path / child).string();
  }
};

std::string write_blobs_csv(const TempDir& dir) {
  const DataMatrix data =
      testutil::make_blobs({20, 20, 20}, {{0, 0}, {8, 0}, {0, 8}}, 1.0, 7);
  const std::string path = dir.str("blobs.csv");
  save_csv(data, path);
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("key=value config files round trip") {
  TempDir dir("skc_cfg_test");
  KeyValueFile file;
  file["run"]["algo"] = "scsk";
  file["run"]["alpha"] = "0.25";
  file["result"]["acc"] = "1";
  const std::string path = dir.str("conf.txt");
  write_key_value_file(file, path);
  const KeyValueFile back = parse_key_value_file(path);
  CHECK(back.at("run").at("algo") == "scsk");
  CHECK(back.at("run").at("alpha") == "0.25");
  CHECK(back.at("result").at("acc") == "1");
}

TEST_CASE("config section maps onto RunConfig and back") {
  RunConfig cfg;
  cfg.algo = "scmk";
  cfg.data_path = "x.csv";
  cfg.label_column = "-1";
  cfg.kernel_specs = {"gaussian:t=1", "linear"};
  cfg.alpha = 0.5;
  cfg.clusters = 4;
  cfg.seed = 99;
  cfg.beta_autotune = true;
  const KeyValueSection s = config_to_section(cfg);
  RunConfig parsed;
  apply_config_section(s, parsed);
  CHECK(parsed.algo == "scmk");
  CHECK(parsed.kernel_specs == cfg.kernel_specs);
  CHECK(parsed.alpha == cfg.alpha);
  CHECK(parsed.clusters == 4);
  CHECK(parsed.seed == 99);
  CHECK(parsed.beta_autotune);
  CHECK(*parsed.label_column == "-1");
}

TEST_CASE("unknown config keys are rejected") {
  KeyValueSection s;
  s["no_such_key"] = "1";
  RunConfig cfg;
  CHECK_THROWS_AS(apply_config_section(s, cfg), InvalidConfig);
}

TEST_CASE("run_fit writes labels, metrics, trace and manifest") {
  TempDir dir("skc_runfit");
  RunConfig cfg;
  cfg.algo = "scsk";
  cfg.data_path = write_blobs_csv(dir);
  cfg.label_column = "-1";
  cfg.kernel_specs = {"gaussian:t=1"};
  cfg.alpha = 0.1;
  cfg.beta = 1e-3;
  cfg.clusters = 3;
  cfg.seed = 7;
  cfg.beta_autotune = true;
  cfg.out_dir = dir.str("out");
  const RunOutcome outcome = run_fit(cfg);
  REQUIRE(outcome.metrics.has_value());
  CHECK(outcome.metrics->acc >= 0.9);
  CHECK(fs::exists(dir.str("out/labels.txt")));
  CHECK(fs::exists(dir.str("out/metrics.txt")));
  CHECK(fs::exists(dir.str("out/objective_trace.txt")));
  CHECK(fs::exists(dir.str("out/manifest.txt")));
  CHECK(load_label_file(outcome.label_path).size() == 60);
}

TEST_CASE("the manifest reproduces the run byte for byte") {
  TempDir dir("skc_manifest");
  RunConfig cfg;
  cfg.algo = "scsk";
  cfg.data_path = write_blobs_csv(dir);
  cfg.label_column = "-1";
  cfg.kernel_specs = {"gaussian:t=1"};
  cfg.alpha = 0.1;
  cfg.beta = 1e-3;
  cfg.clusters = 3;
  cfg.seed = 7;
  cfg.out_dir = dir.str("first");
  const RunOutcome first = run_fit(cfg);

  RunConfig replay = config_from_file(first.manifest_path);
  replay.out_dir = dir.str("second");
  const RunOutcome second = run_fit(replay);
  CHECK(slurp(first.label_path) == slurp(second.label_path));
}

TEST_CASE("scmk run records weights for every bank member") {
  TempDir dir("skc_scmk_run");
  RunConfig cfg;
  cfg.algo = "scmk";
  cfg.data_path = write_blobs_csv(dir);
  cfg.label_column = "-1";
  cfg.kernel_specs = {"gaussian:t=1", "linear"};
  cfg.alpha = 0.01;
  cfg.beta = 1e-3;
  cfg.clusters = 3;
  cfg.seed = 3;
  cfg.max_outer = 25;
  cfg.out_dir = dir.str("out");
  run_fit(cfg);
  const KeyValueFile manifest = parse_key_value_file(dir.str("out/manifest.txt"));
  CHECK(manifest.at("result").at("kernel_descriptors") == "gaussian:t=1;linear");
  const auto weights = parse_real_list(manifest.at("result").at("weights"));
  REQUIRE(weights.size() == 2);
  CHECK(std::sqrt(weights[0]) + std::sqrt(weights[1]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fs::exists(dir.str("out/weights.txt")));
}

TEST_CASE("kernel cache is written and reused") {
  TempDir dir("skc_cache");
  RunConfig cfg;
  cfg.algo = "kkm";
  cfg.data_path = write_blobs_csv(dir);
  cfg.label_column = "-1";
  cfg.kernel_specs = {"gaussian:t=1"};
  cfg.clusters = 3;
  cfg.kernel_cache = dir.str("cache");
  cfg.out_dir = dir.str("out1");
  const RunOutcome first = run_fit(cfg);
  int cached = 0;
  for (const auto& entry : fs::directory_iterator(dir.str("cache"))) {
    (void)entry;
    ++cached;
  }
  CHECK(cached == 1);
  cfg.out_dir = dir.str("out2");
  const RunOutcome second = run_fit(cfg);  // served from cache
  CHECK(first.labels == second.labels);
}

TEST_CASE("baseline algorithms run through the runner") {
  TempDir dir("skc_baselines_run");
  const std::string csv = write_blobs_csv(dir);
  for (const std::string algo : {"kkm", "sc", "kmeans"}) {
    RunConfig cfg;
    cfg.algo = algo;
    cfg.data_path = csv;
    cfg.label_column = "-1";
    cfg.kernel_specs = {"gaussian:t=0.1"};
    cfg.clusters = 3;
    cfg.seed = 5;
    cfg.out_dir = dir.str("out_" + algo);
    const RunOutcome outcome = run_fit(cfg);
    REQUIRE(outcome.metrics.has_value());
    CHECK(outcome.metrics->acc >= 0.9);
  }
}

TEST_CASE("sweep emits one row per grid cell and isolates failures") {
  TempDir dir("skc_sweep");
  RunConfig cfg;
  cfg.algo = "scsk";
  cfg.data_path = write_blobs_csv(dir);
  cfg.label_column = "-1";
  cfg.kernel_specs = {"gaussian:t=1"};
  cfg.beta = 1e-5;
  cfg.clusters = 3;
  cfg.seed = 7;
  cfg.max_outer = 15;
  cfg.out_dir = dir.str("sweep");
  cfg.alpha_grid = {1e-3, 1e-1};
  cfg.beta_grid = {1e-6, 1e-5};
  cfg.jobs = 2;
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) CHECK(row.status == "ok");
  CHECK(fs::exists(dir.str("sweep/results.csv")));
  CHECK(fs::exists(dir.str("sweep/cell_a0_b0/labels.txt")));
  CHECK(fs::exists(dir.str("sweep/cell_a1_b1/manifest.txt")));
}

TEST_CASE("sweep defaults cover the 8x2 reference grid") {
  TempDir dir("skc_sweep_default");
  RunConfig cfg;
  cfg.algo = "scsk";
  cfg.data_path = write_blobs_csv(dir);
  cfg.label_column = "-1";
  cfg.kernel_specs = {"gaussian:t=1"};
  cfg.clusters = 3;
  cfg.seed = 7;
  cfg.max_outer = 6;
  cfg.jobs = 2;
  cfg.out_dir = dir.str("sweep");
  const auto rows = run_sweep(cfg);
  CHECK(rows.size() == 16);
  CHECK(rows.front().alpha == 1e-5);
  CHECK(rows.back().alpha == 100.0);
  CHECK(rows.front().beta == 1e-6);
}

TEST_CASE("single-cell sweep matches a direct fit") {
  TempDir dir("skc_sweep_one");
  RunConfig cfg;
  cfg.algo = "scsk";
  cfg.data_path = write_blobs_csv(dir);
  cfg.label_column = "-1";
  cfg.kernel_specs = {"gaussian:t=1"};
  cfg.clusters = 3;
  cfg.seed = 7;
  cfg.max_outer = 15;
  cfg.out_dir = dir.str("sweep");
  cfg.alpha_grid = {0.1};
  cfg.beta_grid = {1e-5};
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 1);

  RunConfig direct = cfg;
  direct.alpha = 0.1;
  direct.beta = 1e-5;
  direct.alpha_grid.clear();
  direct.beta_grid.clear();
  direct.out_dir = dir.str("direct");
  const RunOutcome outcome = run_fit(direct);
  CHECK(slurp(dir.str("sweep/cell_a0_b0/labels.txt")) == slurp(outcome.label_path));
}

TEST_CASE("eval scores label files and flags mismatches") {
  TempDir dir("skc_eval");
  save_label_file({0, 1, 1, 0}, dir.str("pred.txt"));
  save_label_file({1, 0, 0, 1}, dir.str("truth.txt"));
  const MetricReport report = run_eval(dir.str("pred.txt"), dir.str("truth.txt"));
  CHECK(report.acc == 1.0);

  save_label_file({0, 1}, dir.str("short.txt"));
  CHECK_THROWS_AS(run_eval(dir.str("pred.txt"), dir.str("short.txt")), LengthMismatch);
}

TEST_CASE("run_fit validation errors") {
  RunConfig cfg;
  cfg.algo = "nope";
  CHECK_THROWS_AS(run_fit(cfg), InvalidConfig);

  RunConfig missing;
  missing.algo = "scsk";
  missing.data_path = "/does/not/exist.csv";
  missing.kernel_specs = {"linear"};
  missing.clusters = 2;
  missing.out_dir = (fs::temp_directory_path() / "skc_missing").string();
  CHECK_THROWS_AS(run_fit(missing), IoError);
}
