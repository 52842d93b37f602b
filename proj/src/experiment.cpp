// SPDX-License-Identifier: Apache-2.0
#include "wnv/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace wnv {

namespace fs = std::filesystem;

std::string manifest_hash(const ScenarioConfig& config) {
  std::ostringstream os;
  os << config.emit() << "seed=" << config.seed << "\nversion=" << kCodeVersion << "\n";
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(os.str());
  return hex.str();
}

std::string manifest_text(const ScenarioConfig& config) {
  std::ostringstream os;
  os << "manifest_hash = " << manifest_hash(config) << "\n";
  os << "code_version = " << kCodeVersion << "\n";
  os << "# config snapshot\n";
  os << config.emit();
  return os.str();
}

namespace {

void write_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << content;
}

std::string g17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

void write_trace_csv(const fs::path& file, const RunResult& run, const std::string& hash) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  const int C = run.topo.cell_count;
  out << "# manifest=" << hash << "\n";
  out << "t";
  for (int c = 0; c < C; ++c) out << ",z_cell" << c;
  for (int c = 0; c < C; ++c) out << ",power_w_cell" << c;
  for (int c = 0; c < C; ++c) out << ",lambda_cell" << c;
  for (int c = 0; c < C; ++c) out << ",case_cell" << c;
  out << ",dev_true,dev_est,demand_norm,demand_dev,channel_norm\n";
  out << std::setprecision(17);
  for (size_t t = 0; t < run.slots.size(); ++t) {
    const SlotResult& s = run.slots[t];
    out << t;
    for (int c = 0; c < C; ++c) out << "," << s.z_used[c];
    for (int c = 0; c < C; ++c) out << "," << s.power_w[c];
    for (int c = 0; c < C; ++c) out << "," << s.cells[c].lambda_star;
    for (int c = 0; c < C; ++c) out << "," << to_string(s.cells[c].case_tag);
    out << "," << s.dev_true << "," << s.dev_est << "," << s.demand_norm << ","
        << s.demand_dev << "," << s.channel_norm << "\n";
  }
}

void write_metrics_csv(const fs::path& file, const RunOutputs& out,
                       const ScenarioConfig& config) {
  std::ofstream os(file);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  const int T = static_cast<int>(out.run.slots.size());
  os << "# manifest=" << out.hash << "\n";
  os << "metric,value\n" << std::setprecision(17);
  os << "T," << T << "\n";
  os << "rho_bar_final," << out.series.rho_bar.back() << "\n";
  os << "rho_steady," << steady_state_rho(out.run) << "\n";
  os << "power_bar_w," << out.series.power_bar.back() << "\n";
  os << "power_bar_dbm," << watt_to_dbm(out.series.power_bar.back()) << "\n";
  os << "rate_bar," << out.series.rate_bar.back() << "\n";
  os << "rate_steady," << steady_state_rate(out.run, config.sigma_n2_w()) << "\n";
  if (out.fd_baseline) {
    os << "fd_rate_bar," << out.fd.rate_bar << "\n";
    os << "fd_rate_steady," << out.fd.steady_rate << "\n";
  }
  for (int c = 0; c < out.run.topo.cell_count; ++c)
    os << "power_bar_cell" << c << "_w," << power_bar_cell(out.run, c, T) << "\n";
}

void write_matrix_csv(const fs::path& file, const CMat& m, const std::string& col_label,
                      const std::string& hash) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  if (!hash.empty()) out << "# manifest=" << hash << "\n";
  out << "rows=" << m.rows() << ",cols=" << m.cols();
  for (int j = 0; j < m.cols(); ++j)
    out << "," << col_label << j << "_re," << col_label << j << "_im";
  out << "\n" << std::setprecision(17);
  for (int i = 0; i < m.rows(); ++i) {
    out << i;
    for (int j = 0; j < m.cols(); ++j)
      out << "," << m(i, j).real() << "," << m(i, j).imag();
    out << "\n";
  }
}

CMat read_matrix_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string header;
  std::getline(in, header);
  while (!header.empty() && header[0] == '#') std::getline(in, header);
  int rows = 0, cols = 0;
  if (std::sscanf(header.c_str(), "rows=%d,cols=%d", &rows, &cols) != 2)
    throw std::runtime_error("bad matrix header in " + file.string());
  CMat m(rows, cols);
  std::string line;
  for (int i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated matrix " + file.string());
    std::istringstream ls(line);
    std::string tok;
    std::getline(ls, tok, ',');  // row index
    for (int j = 0; j < cols; ++j) {
      double re, im;
      std::getline(ls, tok, ',');
      re = std::stod(tok);
      std::getline(ls, tok, ',');
      im = std::stod(tok);
      m(i, j) = {re, im};
    }
  }
  return m;
}

RunOutputs run_experiment(const ScenarioConfig& config, const std::string& run_name) {
  config.validate();
  RunOutputs out;
  out.dir = fs::path(config.out_dir) / run_name;
  fs::create_directories(out.dir);
  out.manifest = manifest_text(config);
  out.hash = manifest_hash(config);
  const std::string& hash = out.hash;
  write_file(out.dir / "manifest.txt", out.manifest);

  const Scenario scenario = build_scenario(config);

  SlotObserver dumper;
  fs::path dump_dir = out.dir / "dump";
  if (config.dump_matrices) {
    fs::create_directories(dump_dir);
    dumper = [&dump_dir, &scenario, &hash](int t, const GlobalChannel& ch, const Demand& est,
                                           const Demand& truth, const SlotResult& slot) {
      std::ostringstream tag;
      tag << std::setw(5) << std::setfill('0') << t;
      write_matrix_csv(dump_dir / ("slot" + tag.str() + "_true_H.csv"), ch.true_H, "n", hash);
      write_matrix_csv(dump_dir / ("slot" + tag.str() + "_est_H.csv"), ch.est_H, "n", hash);
      write_matrix_csv(dump_dir / ("slot" + tag.str() + "_demand_true.csv"), truth.global,
                       "k", hash);
      write_matrix_csv(dump_dir / ("slot" + tag.str() + "_demand_est.csv"), est.global, "k",
                       hash);
      const int N = scenario.topo.total_antennas();
      const int K = scenario.topo.total_users();
      CMat v = CMat::Zero(N, K);
      for (int c = 0; c < scenario.topo.cell_count; ++c)
        v.block(scenario.topo.bs_col_offset(c), scenario.topo.cell_row_offset(c),
                scenario.topo.antennas_per_bs[c], scenario.topo.cell_users(c)) =
            slot.cells[c].V_star;
      write_matrix_csv(dump_dir / ("slot" + tag.str() + "_precoder.csv"), v, "k", hash);
    };
  }

  out.run = run_horizon(scenario, config.horizon, config.dump_matrices ? &dumper : nullptr);
  out.series = metric_series(out.run, config.sigma_n2_w());
  out.report = bound_report(out.run);

  if (config.baseline == "fd") {
    out.fd_baseline = true;
    out.fd = run_fd(scenario, config.horizon, config.sigma_n2_w());
  }

  write_trace_csv(out.dir / "trace.csv", out.run, hash);
  write_metrics_csv(out.dir / "metrics.csv", out, config);
  write_file(out.dir / "bound_report.txt",
             "# manifest=" + hash + "\n" + out.report.to_text());
  return out;
}

std::vector<SweepEntry> sweep_plan(const std::string& sweep_name, const ScenarioConfig& base) {
  std::vector<SweepEntry> plan;
  const std::vector<std::pair<std::string, std::string>> schemes = {{"mrt", "mrt"},
                                                                    {"zf", "zf"}};
  auto named = [&](std::string name, ScenarioConfig c) {
    c.preset_name = sweep_name + "/" + name;
    plan.push_back({std::move(name), std::move(c)});
  };

  if (sweep_name == "fig2") {
    for (const auto& [label, scheme] : schemes) {
      for (double theta : {1e-2, 1e-3, 1e-4}) {
        std::ostringstream name;
        name << label << "_theta" << std::scientific << std::setprecision(0) << theta;
        ScenarioConfig c = base;
        c.scheme = scheme;
        c.theta = theta;
        named(name.str(), c);
        ScenarioConfig twin = c;
        twin.csi_error_std = 0.0;  // perfect-CSI twin, shared seed
        named(name.str() + "_perfect", twin);
      }
    }
  } else if (sweep_name == "fig3") {
    for (const auto& [label, scheme] : schemes) {
      for (const std::string pbar : {"36", "37", "inf"}) {
        ScenarioConfig c = base;
        c.scheme = scheme;
        if (pbar == "inf") {
          c.p_bar_infinite = true;
          c.p_bar_dbm = 0.0;
        } else {
          c.p_bar_infinite = false;
          c.p_bar_dbm = std::stod(pbar);
        }
        named(label + "_pbar" + pbar, c);
      }
    }
  } else if (sweep_name == "fig4") {
    for (const auto& [label, scheme] : schemes) {
      for (double eh : {0.05, 0.10, 0.15}) {
        std::ostringstream name;
        name << label << "_eH" << std::fixed << std::setprecision(2) << eh;
        ScenarioConfig c = base;
        c.scheme = scheme;
        c.csi_error_std = eh;
        named(name.str(), c);
      }
    }
  } else if (sweep_name == "fig5") {
    for (const auto& [label, scheme] : schemes) {
      ScenarioConfig c = base;
      c.scheme = scheme;
      named(label + "_spatial", c);
      ScenarioConfig f = c;  // same seed: paired comparison
      f.baseline = "fd";
      named(label + "_fd", f);
    }
  } else {
    throw std::invalid_argument("sweep: unknown preset '" + sweep_name + "'");
  }
  return plan;
}

std::vector<RunOutputs> run_sweep(const std::string& sweep_name, const ScenarioConfig& base) {
  std::vector<RunOutputs> outs;
  for (const SweepEntry& entry : sweep_plan(sweep_name, base)) {
    ScenarioConfig c = entry.config;
    c.out_dir = (fs::path(base.out_dir) / sweep_name).string();
    outs.push_back(run_experiment(c, entry.name));
  }
  return outs;
}

}  // namespace wnv
