// SPDX-License-Identifier: Apache-2.0
#include "wnv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wnv {

namespace {

// Slots with a zero demand norm are excluded from the normalized average
// (they cannot occur with positive SP powers and nonzero channels).
bool slot_rho(const SlotResult& s, double* rho) {
  const double d2 = s.demand_norm * s.demand_norm;
  if (d2 <= 0.0) return false;
  *rho = s.dev_true / d2;
  return true;
}

double slot_rate_sum(const SlotResult& s, double sigma_n2) {
  double sum = 0.0;
  for (int k = 0; k < s.signal_pow.size(); ++k) {
    const double sinr = s.signal_pow(k) / (s.interference_pow(k) + sigma_n2);
    sum += std::log2(1.0 + sinr);
  }
  return sum;
}

int check_horizon(const RunResult& run, int T) {
  if (T < 1 || T > static_cast<int>(run.slots.size()))
    throw std::invalid_argument("metrics: T out of range");
  return T;
}

}  // namespace

double noise_power_w(double noise_density_dbm_hz, double bandwidth_hz,
                     double noise_figure_db) {
  if (bandwidth_hz <= 0.0) throw std::invalid_argument("noise_power_w: bandwidth must be > 0");
  const double dbm = noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
  return std::pow(10.0, dbm / 10.0) * 1e-3;
}

double rho_bar(const RunResult& run, int T) {
  check_horizon(run, T);
  double sum = 0.0;
  int included = 0;
  for (int t = 0; t < T; ++t) {
    double r;
    if (slot_rho(run.slots[t], &r)) {
      sum += r;
      ++included;
    }
  }
  if (included == 0) throw std::runtime_error("rho_bar: every slot has zero demand");
  return sum / included;
}

double power_bar(const RunResult& run, int T) {
  check_horizon(run, T);
  double sum = 0.0;
  for (int t = 0; t < T; ++t)
    sum += std::accumulate(run.slots[t].power_w.begin(), run.slots[t].power_w.end(), 0.0);
  return sum / (static_cast<double>(T) * run.topo.cell_count);
}

double power_bar_cell(const RunResult& run, int c, int T) {
  check_horizon(run, T);
  double sum = 0.0;
  for (int t = 0; t < T; ++t) sum += run.slots[t].power_w[c];
  return sum / T;
}

double rate_bar(const RunResult& run, int T, double sigma_n2) {
  check_horizon(run, T);
  if (sigma_n2 <= 0.0) throw std::invalid_argument("rate_bar: sigma_n2 must be > 0");
  double sum = 0.0;
  for (int t = 0; t < T; ++t) sum += slot_rate_sum(run.slots[t], sigma_n2);
  return sum / (static_cast<double>(T) * run.topo.total_users());
}

MetricSeries metric_series(const RunResult& run, double sigma_n2) {
  const int T = static_cast<int>(run.slots.size());
  const int K = run.topo.total_users();
  const int C = run.topo.cell_count;
  MetricSeries s;
  s.sigma_n2 = sigma_n2;
  s.rho_bar.resize(T);
  s.power_bar.resize(T);
  s.rate_bar.resize(T);
  double rho_sum = 0.0, pw_sum = 0.0, rate_sum = 0.0;
  int rho_included = 0;
  for (int t = 0; t < T; ++t) {
    double r;
    if (slot_rho(run.slots[t], &r)) {
      rho_sum += r;
      ++rho_included;
    } else {
      ++s.excluded_slots;
    }
    pw_sum += std::accumulate(run.slots[t].power_w.begin(), run.slots[t].power_w.end(), 0.0);
    rate_sum += slot_rate_sum(run.slots[t], sigma_n2);
    s.rho_bar[t] = rho_included > 0 ? rho_sum / rho_included : 0.0;
    s.power_bar[t] = pw_sum / ((t + 1.0) * C);
    s.rate_bar[t] = rate_sum / ((t + 1.0) * K);
  }
  return s;
}

double steady_state_rho(const RunResult& run) {
  const int T = static_cast<int>(run.slots.size());
  const int start = (3 * T) / 4;
  double sum = 0.0;
  int included = 0;
  for (int t = start; t < T; ++t) {
    double r;
    if (slot_rho(run.slots[t], &r)) {
      sum += r;
      ++included;
    }
  }
  if (included == 0) throw std::runtime_error("steady_state_rho: every slot has zero demand");
  return sum / included;
}

double steady_state_rate(const RunResult& run, double sigma_n2) {
  const int T = static_cast<int>(run.slots.size());
  const int start = (3 * T) / 4;
  double sum = 0.0;
  for (int t = start; t < T; ++t) sum += slot_rate_sum(run.slots[t], sigma_n2);
  return sum / ((T - start) * static_cast<double>(run.topo.total_users()));
}

bool BoundReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

namespace {

BoundCheck make_check(std::string name, int cell, double lhs, double rhs) {
  BoundCheck c;
  c.name = std::move(name);
  c.cell = cell;
  c.lhs = lhs;
  c.rhs = rhs;
  c.pass = (rhs - lhs) >= -1e-12 * std::max(1.0, std::abs(rhs));
  return c;
}

}  // namespace

BoundReport bound_report(const RunResult& run) {
  const Topology& topo = run.topo;
  const AlgoParams& p = run.params;
  const RunStats& st = run.stats;
  const int C = topo.cell_count;
  const int T = static_cast<int>(run.slots.size());

  BoundReport r;
  r.S_prime = p.S_prime;
  r.zeta_prime = p.zeta_prime;
  r.epsilon = p.epsilon;
  r.U = p.U;
  r.xi = p.xi;
  r.B_nominal = p.B;
  r.B_realized = st.B_realized;
  r.delta_hat = st.delta_hat;

  double gamma2 = 0.0;
  for (double pm : p.p_max_w) gamma2 += pm;
  r.gamma_prime = std::sqrt(gamma2);

  // eta' from the per-SP constants with realized extrema. alpha uses the
  // minimum estimated block norm, beta the minimum eigenvalues of the
  // local Gram matrices; both are run-level minima.
  const double B = st.B_realized;
  const double d = st.delta_hat;
  double eta2 = 0.0;
  for (int c = 0; c < C; ++c) {
    for (int m = 0; m < topo.sp_count; ++m) {
      const double pm = run.sp.power_w[c][m];
      if (run.sp.scheme[c][m] == PrecodingScheme::Mrt) {
        const double a = 1.0 + (2.0 + d) * B / st.min_est_block_norm(c, m);
        eta2 += a * a * pm;
      } else {
        const double km = topo.users_per_sp[c][m];
        const double b = std::pow(B, 4) * (1.0 + d) * (1.0 + d) /
                         (km * st.min_est_eig(c, m) * st.min_true_eig(c, m));
        eta2 += b * b * pm;
      }
    }
  }
  r.eta_prime = std::sqrt(eta2);
  r.phi_prime = 2.0 *
                ((2.0 + d) * (gamma2 + r.zeta_prime * r.eta_prime) +
                 2.0 * (r.zeta_prime * (1.0 + d) + r.eta_prime) * r.gamma_prime) *
                B * B * d;

  // Queue bound (per cell): Z^c(t) <= U B^2 (1+d)^2 xi^c + P_max^c - P_bar^c.
  r.queue_bound.resize(C);
  for (int c = 0; c < C; ++c) {
    r.queue_bound[c] = std::isinf(p.p_bar_w[c])
                           ? std::numeric_limits<double>::infinity()
                           : p.U * B * B * (1.0 + d) * (1.0 + d) * p.xi[c] +
                                 p.p_max_w[c] - p.p_bar_w[c];
    double z_max = 0.0;
    for (const SlotResult& s : run.slots)
      z_max = std::max({z_max, s.z_used[c], s.z_next[c]});
    r.checks.push_back(make_check("queue_bound", c, z_max, r.queue_bound[c]));
  }

  // Per-slot feasibility ||V^c||^2 <= P_max^c (1 + 1e-9).
  for (int c = 0; c < C; ++c) {
    double pw_max = 0.0;
    for (const SlotResult& s : run.slots) pw_max = std::max(pw_max, s.power_w[c]);
    r.checks.push_back(make_check("slot_power_cap", c, pw_max, p.p_max_w[c] * (1.0 + 1e-9)));
  }

  // Time-averaged power bound at prefix horizons.
  for (int prefix : {1, 10, 100, 1000}) {
    if (prefix > T) continue;
    for (int c = 0; c < C; ++c) {
      if (std::isinf(p.p_bar_w[c])) continue;
      const double lhs = power_bar_cell(run, c, prefix);
      const double rhs = p.p_bar_w[c] +
                         (p.S_prime * B * B * (1.0 + d) * (1.0 + d) * p.xi[c] +
                          p.epsilon * (p.p_max_w[c] - p.p_bar_w[c])) /
                             (p.epsilon * prefix);
      r.checks.push_back(
          make_check("avg_power_bound_T" + std::to_string(prefix), c, lhs, rhs));
    }
  }

  // Demand bounds, slot-wise with the slot's own channel norm.
  double worst_norm_margin = -std::numeric_limits<double>::infinity();
  double norm_lhs = 0.0, norm_rhs = 0.0;
  double worst_dev_margin = -std::numeric_limits<double>::infinity();
  double dev_lhs = 0.0, dev_rhs = 0.0;
  for (const SlotResult& s : run.slots) {
    const double nb = r.zeta_prime * s.channel_norm;
    if (s.demand_norm - nb > worst_norm_margin) {
      worst_norm_margin = s.demand_norm - nb;
      norm_lhs = s.demand_norm;
      norm_rhs = nb;
    }
    const double db = r.eta_prime * s.channel_norm * d;
    if (s.demand_dev - db > worst_dev_margin) {
      worst_dev_margin = s.demand_dev - db;
      dev_lhs = s.demand_dev;
      dev_rhs = db;
    }
  }
  r.checks.push_back(make_check("demand_norm_bound", -1, norm_lhs, norm_rhs));
  r.checks.push_back(make_check("demand_deviation_bound", -1, dev_lhs, dev_rhs));

  double dev_sum = 0.0;
  for (const SlotResult& s : run.slots) dev_sum += s.dev_true;
  r.mean_deviation = dev_sum / T;
  r.deviation_minus_gap = r.mean_deviation - (r.phi_prime + r.epsilon);
  return r;
}

std::string BoundReport::to_text() const {
  std::ostringstream os;
  os.precision(12);
  os << "# constants\n";
  os << "S_prime " << S_prime << "\n";
  os << "zeta_prime " << zeta_prime << "\n";
  os << "gamma_prime " << gamma_prime << "\n";
  os << "eta_prime " << eta_prime << "\n";
  os << "phi_prime " << phi_prime << "\n";
  os << "B_nominal " << B_nominal << "\n";
  os << "B_realized " << B_realized << "\n";
  os << "delta_hat " << delta_hat << "\n";
  os << "epsilon " << epsilon << "\n";
  os << "U " << U << "\n";
  for (size_t c = 0; c < xi.size(); ++c) os << "xi_cell" << c << " " << xi[c] << "\n";
  os << "mean_deviation " << mean_deviation << "\n";
  os << "deviation_minus_gap " << deviation_minus_gap << "\n";
  os << "# checks: name cell lhs rhs slack status\n";
  for (const BoundCheck& c : checks) {
    os << c.name << " " << c.cell << " " << c.lhs << " " << c.rhs << " " << c.slack() << " "
       << (c.pass ? "pass" : "FAIL") << "\n";
  }
  return os.str();
}

std::vector<BoundCheck> parse_bound_checks(const std::string& text) {
  std::vector<BoundCheck> out;
  std::istringstream is(text);
  std::string line;
  bool in_checks = false;
  while (std::getline(is, line)) {
    if (line.rfind("# checks", 0) == 0) {
      in_checks = true;
      continue;
    }
    if (!in_checks || line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    BoundCheck c;
    std::string status;
    double slack;
    if (ls >> c.name >> c.cell >> c.lhs >> c.rhs >> slack >> status)
      c.pass = (status == "pass");
    out.push_back(c);
  }
  return out;
}

}  // namespace wnv
