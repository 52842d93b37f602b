// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "wnv/controller.hpp"

namespace wnv {

/// Cumulative series of the paper-style metrics, one value per prefix T.
struct MetricSeries {
  std::vector<double> rho_bar;    // normalized time-averaged deviation
  std::vector<double> power_bar;  // watts per cell
  std::vector<double> rate_bar;   // bits/s/Hz per user
  double sigma_n2 = 0.0;
  int excluded_slots = 0;  // zero-demand slots left out of rho_bar
};

/// sigma_n^2 = N0 * B_W * N_F in watts, from dBm/Hz, Hz and dB.
double noise_power_w(double noise_density_dbm_hz, double bandwidth_hz, double noise_figure_db);

/// Mean of ||H'V' - D'||_F^2 / ||D'||_F^2 over the first T slots.
/// Zero-demand slots are excluded from the average (see MetricSeries).
double rho_bar(const RunResult& run, int T);

/// (1/(T C)) sum_t ||V'(t)||_F^2.
double power_bar(const RunResult& run, int T);

/// Per-cell variant (1/T) sum_t ||V^c(t)||_F^2, for the power bound check.
double power_bar_cell(const RunResult& run, int c, int T);

/// (1/(T K)) sum_t sum_k log2(1 + SINR_k(t)).
double rate_bar(const RunResult& run, int T, double sigma_n2);

MetricSeries metric_series(const RunResult& run, double sigma_n2);

/// Mean of the per-slot normalized deviation over the last quarter of the
/// horizon; the steady-state estimate used for reporting.
double steady_state_rho(const RunResult& run);

/// Mean per-slot rate over the last quarter of the horizon.
double steady_state_rate(const RunResult& run, double sigma_n2);

/// One checked inequality: pass iff slack = rhs - lhs >= -1e-12*max(1,|rhs|).
struct BoundCheck {
  std::string name;
  int cell = -1;  // -1 for network-wide checks
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
  double slack() const { return rhs - lhs; }
};

/// Theoretical constants evaluated with the realized channel extrema, plus
/// the slot-wise and horizon-wise inequality checks.
struct BoundReport {
  double S_prime = 0.0;
  double zeta_prime = 0.0;
  double gamma_prime = 0.0;
  double eta_prime = 0.0;
  double phi_prime = 0.0;
  double B_nominal = 0.0;   // Chernoff-style bound from the gains
  double B_realized = 0.0;  // max_t ||H'(t)||_F
  double delta_hat = 0.0;
  double epsilon = 0.0;
  double U = 0.0;
  std::vector<double> xi;
  std::vector<double> queue_bound;  // analytic per-cell queue cap
  double mean_deviation = 0.0;      // (1/T) sum_t ||H'V'-D'||_F^2
  double deviation_minus_gap = 0.0; // mean_deviation - (phi' + epsilon)
  std::vector<BoundCheck> checks;

  bool all_pass() const;
  std::string to_text() const;  // machine-readable, one line per check
};

BoundReport bound_report(const RunResult& run);

/// Parses the text emitted by BoundReport::to_text (for the CLI printer).
std::vector<BoundCheck> parse_bound_checks(const std::string& text);

}  // namespace wnv
