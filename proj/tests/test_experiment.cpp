// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wnv/experiment.hpp"

using namespace wnv;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioConfig test_config(const std::string& out_dir) {
  ScenarioConfig cfg = preset("small-test");
  cfg.horizon = 8;
  cfg.out_dir = out_dir;
  return cfg;
}

}  // namespace

TEST_CASE("run_experiment writes all artifacts tagged with the manifest hash") {
  const std::string dir = "/tmp/wnv_exp_artifacts";
  fs::remove_all(dir);
  ScenarioConfig cfg = test_config(dir);
  RunOutputs out = run_experiment(cfg, "probe");

  const std::string hash = manifest_hash(cfg);
  CHECK(hash.size() == 16);
  for (const char* name : {"trace.csv", "metrics.csv", "bound_report.txt"}) {
    const fs::path p = out.dir / name;
    REQUIRE(fs::exists(p));
    const std::string content = slurp(p);
    CHECK(content.find(hash) != std::string::npos);
  }
  const std::string manifest = slurp(out.dir / "manifest.txt");
  CHECK(manifest.find("manifest_hash = " + hash) == 0);
  CHECK(manifest.find(cfg.emit()) != std::string::npos);

  // one CSV row per slot plus header and manifest comment
  std::istringstream trace(slurp(out.dir / "trace.csv"));
  int lines = 0;
  std::string line;
  while (std::getline(trace, line)) ++lines;
  CHECK(lines == 2 + cfg.horizon);
}

TEST_CASE("rerun with the same manifest is bitwise identical") {
  const std::string dir = "/tmp/wnv_exp_rerun";
  fs::remove_all(dir);
  RunOutputs a = run_experiment(test_config(dir), "run");
  const std::string trace = slurp(a.dir / "trace.csv");
  const std::string metrics = slurp(a.dir / "metrics.csv");
  const std::string report = slurp(a.dir / "bound_report.txt");
  const std::string manifest = slurp(a.dir / "manifest.txt");

  fs::remove_all(dir);
  RunOutputs b = run_experiment(test_config(dir), "run");
  CHECK(slurp(b.dir / "trace.csv") == trace);
  CHECK(slurp(b.dir / "metrics.csv") == metrics);
  CHECK(slurp(b.dir / "bound_report.txt") == report);
  CHECK(slurp(b.dir / "manifest.txt") == manifest);

  // results do not depend on where they are written: only the manifest
  // comment line may differ across output directories
  RunOutputs c = run_experiment(test_config(dir + "_other"), "run");
  const std::string other = slurp(c.dir / "trace.csv");
  CHECK(other.substr(other.find('\n')) == trace.substr(trace.find('\n')));
}

TEST_CASE("manifest hash tracks config and seed") {
  ScenarioConfig a = test_config("/tmp/x");
  ScenarioConfig b = a;
  CHECK(manifest_hash(a) == manifest_hash(b));
  b.seed = a.seed + 1;
  CHECK(manifest_hash(a) != manifest_hash(b));
  b = a;
  b.theta *= 2;
  CHECK(manifest_hash(a) != manifest_hash(b));
}

TEST_CASE("matrix csv round-trips exactly") {
  RngStream rng(5);
  CMat m(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rng.complex_normal() * 1e-7;
  const fs::path p = "/tmp/wnv_matrix_roundtrip.csv";
  write_matrix_csv(p, m, "n");
  CMat back = read_matrix_csv(p);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK((back.array() == m.array()).all());
}

TEST_CASE("rho recomputed from dumped matrices matches the trace") {
  const std::string dir = "/tmp/wnv_exp_dump";
  fs::remove_all(dir);
  ScenarioConfig cfg = test_config(dir);
  cfg.horizon = 4;
  cfg.dump_matrices = true;
  RunOutputs out = run_experiment(cfg, "dump");

  // dumped matrices carry the manifest hash too
  const std::string first = slurp(out.dir / "dump" / "slot00000_true_H.csv");
  CHECK(first.rfind("# manifest=" + manifest_hash(cfg), 0) == 0);

  for (int t = 0; t < cfg.horizon; ++t) {
    std::ostringstream tag;
    tag << std::setw(5) << std::setfill('0') << t;
    const CMat H = read_matrix_csv(out.dir / "dump" / ("slot" + tag.str() + "_true_H.csv"));
    const CMat D = read_matrix_csv(out.dir / "dump" / ("slot" + tag.str() + "_demand_true.csv"));
    const CMat V = read_matrix_csv(out.dir / "dump" / ("slot" + tag.str() + "_precoder.csv"));
    const double dev = (H * V - D).squaredNorm();
    const double rho = dev / D.squaredNorm();
    const SlotResult& slot = out.run.slots[t];
    CHECK(rho == doctest::Approx(slot.dev_true / (slot.demand_norm * slot.demand_norm))
                     .epsilon(1e-12));
  }
}

TEST_CASE("sweep plans enumerate the documented runs") {
  ScenarioConfig base = preset("urban-lte-default");

  auto fig2 = sweep_plan("fig2", base);
  CHECK(fig2.size() == 12);  // 3 theta x 2 schemes, plus perfect-CSI twins
  int perfect = 0;
  for (const auto& e : fig2) perfect += e.config.csi_error_std == 0.0;
  CHECK(perfect == 6);

  auto fig3 = sweep_plan("fig3", base);
  CHECK(fig3.size() == 6);
  int infinite = 0;
  for (const auto& e : fig3) infinite += e.config.p_bar_infinite;
  CHECK(infinite == 2);

  auto fig4 = sweep_plan("fig4", base);
  CHECK(fig4.size() == 6);

  auto fig5 = sweep_plan("fig5", base);
  CHECK(fig5.size() == 4);
  // paired runs share seeds
  CHECK(fig5[0].config.seed == fig5[1].config.seed);
  CHECK(fig5[1].config.baseline == "fd");

  CHECK_THROWS_AS(sweep_plan("fig9", base), std::invalid_argument);
}

TEST_CASE("fd baseline artifacts appear in the metrics summary") {
  const std::string dir = "/tmp/wnv_exp_fd";
  fs::remove_all(dir);
  ScenarioConfig cfg = test_config(dir);
  cfg.baseline = "fd";
  cfg.horizon = 6;
  RunOutputs out = run_experiment(cfg, "fd");
  CHECK(out.fd_baseline);
  const std::string metrics = slurp(out.dir / "metrics.csv");
  CHECK(metrics.find("fd_rate_bar") != std::string::npos);
}
