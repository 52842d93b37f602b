// SPDX-License-Identifier: Apache-2.0
//
// Batch front end: run a single scenario, run a sweep preset, or
// pretty-print a bound report.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "wnv/experiment.hpp"

namespace {

void apply_overrides(wnv::ScenarioConfig& cfg, std::uint64_t* seed, int* horizon,
                     const std::string* out_dir, bool dump) {
  if (seed) cfg.seed = *seed;
  if (horizon) cfg.horizon = *horizon;
  if (out_dir) cfg.out_dir = *out_dir;
  if (dump) cfg.dump_matrices = true;
}

int cmd_run(const std::string& config_path, const std::string& preset_name,
            std::uint64_t* seed, int* horizon, const std::string* out_dir, bool dump) {
  wnv::ScenarioConfig cfg = config_path.empty() ? wnv::preset(preset_name)
                                                : wnv::load_config_file(config_path);
  apply_overrides(cfg, seed, horizon, out_dir, dump);
  const wnv::RunOutputs out = wnv::run_experiment(cfg, "run_seed" + std::to_string(cfg.seed));
  std::cout << "wrote " << out.dir.string() << "\n";
  std::cout << std::setprecision(6);
  std::cout << "rho_bar(T)      " << out.series.rho_bar.back() * 100 << " %\n";
  std::cout << "rho_steady      " << wnv::steady_state_rho(out.run) * 100 << " %\n";
  std::cout << "power_bar(T)    " << wnv::watt_to_dbm(out.series.power_bar.back())
            << " dBm\n";
  std::cout << "rate_bar(T)     " << out.series.rate_bar.back() << " bit/s/Hz\n";
  if (out.fd_baseline)
    std::cout << "fd_rate_bar(T)  " << out.fd.rate_bar << " bit/s/Hz\n";
  std::cout << "bound checks    " << (out.report.all_pass() ? "all pass" : "FAILURES")
            << "\n";
  return out.report.all_pass() ? 0 : 1;
}

int cmd_sweep(const std::string& sweep_name, std::uint64_t* seed, int* horizon,
              const std::string* out_dir, bool dump) {
  wnv::ScenarioConfig base = wnv::preset("urban-lte-default");
  apply_overrides(base, seed, horizon, out_dir, dump);
  const auto outs = wnv::run_sweep(sweep_name, base);
  bool ok = true;
  for (const auto& out : outs) {
    std::cout << out.dir.string() << "  rho_steady="
              << wnv::steady_state_rho(out.run) * 100 << "%  checks="
              << (out.report.all_pass() ? "pass" : "FAIL") << "\n";
    ok = ok && out.report.all_pass();
  }
  return ok ? 0 : 1;
}

int cmd_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto checks = wnv::parse_bound_checks(ss.str());
  std::cout << std::left << std::setw(28) << "inequality" << std::setw(6) << "cell"
            << std::setw(16) << "lhs" << std::setw(16) << "rhs" << std::setw(16)
            << "slack" << "status\n";
  int failures = 0;
  for (const auto& c : checks) {
    std::cout << std::left << std::setw(28) << c.name << std::setw(6)
              << (c.cell < 0 ? std::string("-") : std::to_string(c.cell))
              << std::setw(16) << std::setprecision(6) << c.lhs << std::setw(16) << c.rhs
              << std::setw(16) << c.slack() << (c.pass ? "pass" : "FAIL") << "\n";
    failures += c.pass ? 0 : 1;
  }
  std::cout << checks.size() << " checks, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online multi-cell MIMO virtualization simulator"};
  app.require_subcommand(1);

  std::string config_path, preset_name = "urban-lte-default", sweep_name, report_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int horizon = 0;
  bool dump = false;

  CLI::App* run = app.add_subcommand("run", "run one scenario");
  run->add_option("config", config_path, "config file (key = value with [sections])");
  run->add_option("--preset", preset_name, "named preset when no config file is given");
  auto* run_seed = run->add_option("--seed", seed, "override RNG seed");
  auto* run_hor = run->add_option("--horizon", horizon, "override slot count");
  auto* run_out = run->add_option("--out-dir", out_dir, "override output directory");
  run->add_flag("--dump-matrices", dump, "dump per-slot matrices");

  CLI::App* sweep = app.add_subcommand("sweep", "run a sweep preset (fig2..fig5)");
  sweep->add_option("preset", sweep_name, "sweep name")->required();
  auto* sw_seed = sweep->add_option("--seed", seed, "override RNG seed");
  auto* sw_hor = sweep->add_option("--horizon", horizon, "override slot count");
  auto* sw_out = sweep->add_option("--out-dir", out_dir, "override output directory");
  sweep->add_flag("--dump-matrices", dump, "dump per-slot matrices");

  CLI::App* report = app.add_subcommand("report", "pretty-print a bound report");
  report->add_option("file", report_path, "bound_report.txt path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, preset_name, run_seed->count() ? &seed : nullptr,
                     run_hor->count() ? &horizon : nullptr,
                     run_out->count() ? &out_dir : nullptr, dump);
    if (sweep->parsed())
      return cmd_sweep(sweep_name, sw_seed->count() ? &seed : nullptr,
                       sw_hor->count() ? &horizon : nullptr,
                       sw_out->count() ? &out_dir : nullptr, dump);
    if (report->parsed()) return cmd_report(report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
