// SPDX-License-Identifier: Apache-2.0
#include "wnv/fd_baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace wnv {

Scenario restrict_to_sp(const Scenario& scenario, int sp_index) {
  const Topology& topo = scenario.topo;
  const int M = topo.sp_count;
  if (sp_index < 0 || sp_index >= M)
    throw std::invalid_argument("restrict_to_sp: SP index out of range");

  Scenario sub;
  sub.topo = topo;
  sub.topo.sp_count = 1;
  for (int c = 0; c < topo.cell_count; ++c)
    sub.topo.users_per_sp[c] = {topo.users_per_sp[c][sp_index]};

  // Keep this SP's rows of the placement and gains, in global row order.
  const int sub_k = sub.topo.total_users();
  sub.users.reserve(sub_k);
  sub.gains.beta.resize(sub_k, topo.cell_count);
  sub.gains.distance_m.resize(sub_k, topo.cell_count);
  sub.gains.shadowing_db.resize(sub_k, topo.cell_count);
  int row = 0;
  for (int c = 0; c < topo.cell_count; ++c) {
    const int off = topo.sp_row_offset(c, sp_index);
    for (int k = 0; k < topo.users_per_sp[c][sp_index]; ++k, ++row) {
      sub.users.push_back(scenario.users[off + k]);
      sub.gains.beta.row(row) = scenario.gains.beta.row(off + k);
      sub.gains.distance_m.row(row) = scenario.gains.distance_m.row(off + k);
      sub.gains.shadowing_db.row(row) = scenario.gains.shadowing_db.row(off + k);
    }
  }

  sub.sp.scheme.resize(topo.cell_count);
  sub.sp.power_w.resize(topo.cell_count);
  std::vector<double> p_max_w(topo.cell_count), p_bar_w(topo.cell_count);
  for (int c = 0; c < topo.cell_count; ++c) {
    sub.sp.scheme[c] = {scenario.sp.scheme[c][sp_index]};
    sub.sp.power_w[c] = {scenario.sp.power_w[c][sp_index]};
    p_max_w[c] = scenario.params.p_max_w[c] / M;
    p_bar_w[c] = scenario.params.p_bar_w[c] / M;  // inf stays inf
  }
  sub.sp.zf_condition_cap = scenario.sp.zf_condition_cap;
  sub.sp.on_singular = scenario.sp.on_singular;
  sub.sp.validate(sub.topo, p_max_w);

  sub.params = compute_weight(scenario.params.theta, sub.topo, sub.gains, sub.sp,
                              p_max_w, p_bar_w);
  sub.e_H = scenario.e_H;
  if (M == 1) {
    sub.fading_seed = scenario.fading_seed;
    sub.csi_seed = scenario.csi_seed;
  } else {
    // Independent fading per sub-band.
    sub.fading_seed = mix_seed(scenario.fading_seed, "fd-sub" + std::to_string(sp_index));
    sub.csi_seed = mix_seed(scenario.csi_seed, "fd-sub" + std::to_string(sp_index));
  }
  return sub;
}

FdResult run_fd(const Scenario& scenario, int horizon, double sigma_n2_full) {
  const int M = scenario.topo.sp_count;
  const double sigma_sub = sigma_n2_full / M;

  FdResult fd;
  fd.per_sp.reserve(M);
  fd.sp_user_count.resize(M);
  int total_users = 0;
  for (int m = 0; m < M; ++m) {
    Scenario sub = restrict_to_sp(scenario, m);
    fd.sp_user_count[m] = sub.topo.total_users();
    total_users += fd.sp_user_count[m];
    fd.per_sp.push_back(run_horizon(sub, horizon));
  }

  // Rates are computed within each sub-band, then normalized by the total
  // bandwidth: each SP's per-user rate is scaled by 1/M.
  fd.rate_series.assign(horizon, 0.0);
  std::vector<double> slot_rate_sum(horizon, 0.0);
  for (int m = 0; m < M; ++m) {
    for (int t = 0; t < horizon; ++t) {
      const SlotResult& s = fd.per_sp[m].slots[t];
      double sum = 0.0;
      for (int k = 0; k < s.signal_pow.size(); ++k) {
        const double sinr = s.signal_pow(k) / (s.interference_pow(k) + sigma_sub);
        sum += std::log2(1.0 + sinr);
      }
      slot_rate_sum[t] += sum / M;
    }
  }
  double acc = 0.0;
  for (int t = 0; t < horizon; ++t) {
    acc += slot_rate_sum[t] / total_users;
    fd.rate_series[t] = acc / (t + 1);
  }
  fd.rate_bar = fd.rate_series.back();
  const int start = (3 * horizon) / 4;
  double tail = 0.0;
  for (int t = start; t < horizon; ++t) tail += slot_rate_sum[t] / total_users;
  fd.steady_rate = tail / (horizon - start);
  return fd;
}

}  // namespace wnv
