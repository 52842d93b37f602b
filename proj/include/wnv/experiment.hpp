// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wnv/fd_baseline.hpp"
#include "wnv/metrics.hpp"
#include "wnv/scenario.hpp"

namespace wnv {

inline constexpr const char* kCodeVersion = "wnv 0.1.0";

/// Hash naming a run: FNV-1a over the canonical config text, seed and
/// code version. Every output file carries it.
std::string manifest_hash(const ScenarioConfig& config);

/// Manifest text: hash, version, seed and the full config snapshot.
std::string manifest_text(const ScenarioConfig& config);

struct RunOutputs {
  std::filesystem::path dir;
  std::string manifest;
  std::string hash;
  RunResult run;
  MetricSeries series;
  BoundReport report;
  bool fd_baseline = false;
  FdResult fd;  // only populated when fd_baseline
};

/// Executes one configured run and writes trace.csv, metrics.csv,
/// bound_report.txt and manifest.txt under <out_dir>/<run_name>/.
RunOutputs run_experiment(const ScenarioConfig& config, const std::string& run_name);

/// A named sweep entry: label plus the full config.
struct SweepEntry {
  std::string name;
  ScenarioConfig config;
};

/// Experiment sweeps: "fig2" (theta x scheme, with perfect-CSI twins),
/// "fig3" (P_bar x scheme), "fig4" (e_H x scheme), "fig5" (spatial vs FD
/// x scheme, shared seeds pairwise).
std::vector<SweepEntry> sweep_plan(const std::string& sweep_name, const ScenarioConfig& base);

/// Runs every entry of a sweep; returns the output directories.
std::vector<RunOutputs> run_sweep(const std::string& sweep_name, const ScenarioConfig& base);

/// Writers used by run_experiment; exposed for tests.
void write_trace_csv(const std::filesystem::path& file, const RunResult& run,
                     const std::string& hash);
void write_metrics_csv(const std::filesystem::path& file, const RunOutputs& out,
                       const ScenarioConfig& config);

/// Complex matrix dump: header row naming the columns, then row-major
/// interleaved real/imaginary values at full precision. A non-empty hash
/// is written as a leading manifest comment.
void write_matrix_csv(const std::filesystem::path& file, const CMat& m,
                      const std::string& col_label, const std::string& hash = "");
CMat read_matrix_csv(const std::filesystem::path& file);

}  // namespace wnv
