// SPDX-License-Identifier: Apache-2.0
#include "wnv/controller.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wnv {

AlgoParams compute_weight(double theta, const Topology& topo, const LargeScaleGains& gains,
                          const SpConfig& sp, const std::vector<double>& p_max_w,
                          const std::vector<double>& p_bar_w) {
  if (theta <= 0.0) throw std::invalid_argument("compute_weight: theta must be > 0");
  if (static_cast<int>(p_max_w.size()) != topo.cell_count ||
      static_cast<int>(p_bar_w.size()) != topo.cell_count)
    throw std::invalid_argument("compute_weight: per-cell power size mismatch");

  AlgoParams p;
  p.theta = theta;
  p.p_max_w = p_max_w;
  p.p_bar_w = p_bar_w;
  p.B = channel_bound(topo, gains);

  double power_sum = 0.0;  // sum_c sum_m P_m^c
  p.xi.resize(topo.cell_count);
  p.S_prime = 0.0;
  p.queues_enabled = false;
  for (int c = 0; c < topo.cell_count; ++c) {
    const double cell_power =
        std::accumulate(sp.power_w[c].begin(), sp.power_w[c].end(), 0.0);
    power_sum += cell_power;
    if (std::isinf(p_bar_w[c])) {
      // Long-term constraint disabled: the queue stays pinned at zero and
      // contributes no drift, so this cell adds nothing to S'.
      p.xi[c] = 0.0;
      continue;
    }
    if (p_bar_w[c] > p_max_w[c])
      throw std::invalid_argument("compute_weight: P_bar^c > P_max^c in cell " +
                                  std::to_string(c));
    p.queues_enabled = true;
    const double a = p_max_w[c] - p_bar_w[c];
    p.S_prime += 0.5 * std::max(a * a, p_bar_w[c] * p_bar_w[c]);
    p.xi[c] = std::sqrt(topo.antennas_per_bs[c] / p_bar_w[c] * cell_power);
  }
  p.zeta_prime = std::sqrt(power_sum);
  p.epsilon = theta * power_sum * p.B * p.B;
  // With every queue disabled the objective is scale invariant in U.
  p.U = p.queues_enabled ? p.S_prime / p.epsilon : 1.0;
  return p;
}

double update_queue(double z, double achieved_power_w, double p_bar_w) {
  if (z < 0.0) throw std::invalid_argument("update_queue: Z must be >= 0");
  return std::max(z + achieved_power_w - p_bar_w, 0.0);
}

SlotResult run_slot(QueueState& queues, const Topology& topo, const GlobalChannel& channel,
                    const Demand& est_demand, const Demand& true_demand,
                    const AlgoParams& params, const std::vector<int>* cell_order) {
  const int C = topo.cell_count;
  const int K = topo.total_users();
  if (static_cast<int>(queues.z.size()) != C)
    throw std::invalid_argument("run_slot: queue size mismatch");

  std::vector<int> order(C);
  std::iota(order.begin(), order.end(), 0);
  if (cell_order) order = *cell_order;

  SlotResult slot;
  slot.cells.resize(C);
  slot.power_w.resize(C);
  slot.z_used = queues.z;
  slot.z_next.resize(C);

  for (int idx : order) {
    const int c = idx;
    SolverInput in;
    in.H_hat = bs_columns(channel.est_H, topo, c);
    in.G_hat = est_demand.padded[c];
    in.Z = std::isinf(params.p_bar_w[c]) ? 0.0 : queues.z[c];
    in.U = params.U;
    in.P_max = params.p_max_w[c];
    // Lambda bracket seeded from the queue-bound norm chain; the bisection
    // doubles it further if needed.
    in.lambda_bracket_init = params.U * params.B * params.B * params.zeta_prime /
                             std::sqrt(params.p_max_w[c]);
    try {
      slot.cells[c] = solve_cell(in);
    } catch (const std::exception& e) {
      throw std::runtime_error("run_slot: cell " + std::to_string(c) + ": " + e.what());
    }
    slot.power_w[c] = slot.cells[c].achieved_power;
  }

  // Received-signal matrix under true CSI; column block c is H^c V^c.
  CMat Y(K, K);
  double dev_est = 0.0;
  for (int c = 0; c < C; ++c) {
    const CMat& Vc = slot.cells[c].V_star;
    Y.middleCols(topo.cell_row_offset(c), topo.cell_users(c)) =
        bs_columns(channel.true_H, topo, c) * Vc;
    dev_est += (bs_columns(channel.est_H, topo, c) * Vc - est_demand.padded[c]).squaredNorm();
  }
  slot.dev_true = (Y - true_demand.global).squaredNorm();
  slot.dev_est = dev_est;
  slot.demand_norm = true_demand.global.norm();
  slot.est_demand_norm = est_demand.global.norm();
  slot.demand_dev = demand_deviation(true_demand, est_demand);
  slot.channel_norm = channel.true_H.norm();
  slot.max_block_error_ratio = channel.max_block_error_ratio;

  slot.signal_pow.resize(K);
  slot.interference_pow.resize(K);
  for (int k = 0; k < K; ++k) {
    const double diag = std::norm(Y(k, k));
    slot.signal_pow(k) = diag;
    slot.interference_pow(k) = Y.row(k).squaredNorm() - diag;
  }

  // Barrier: queues advance only after every cell has been solved.
  for (int c = 0; c < C; ++c) {
    slot.z_next[c] = std::isinf(params.p_bar_w[c])
                         ? 0.0
                         : update_queue(queues.z[c], slot.power_w[c], params.p_bar_w[c]);
  }
  queues.z = slot.z_next;
  return slot;
}

RunResult run_horizon(const Scenario& scenario, int horizon, const SlotObserver* observer) {
  if (horizon < 1) throw std::invalid_argument("run_horizon: horizon must be >= 1");
  const Topology& topo = scenario.topo;
  const int C = topo.cell_count;
  const int M = topo.sp_count;

  RunResult run;
  run.params = scenario.params;
  run.topo = topo;
  run.sp = scenario.sp;
  run.slots.reserve(horizon);
  run.stats.min_est_block_norm = RMat::Constant(C, M, std::numeric_limits<double>::infinity());
  run.stats.min_est_eig = RMat::Constant(C, M, std::numeric_limits<double>::infinity());
  run.stats.min_true_eig = RMat::Constant(C, M, std::numeric_limits<double>::infinity());

  RngStream fading(scenario.fading_seed);
  RngStream csi(scenario.csi_seed);
  QueueState queues(C);

  for (int t = 0; t < horizon; ++t) {
    CMat true_H = draw_channel(topo, scenario.gains, fading);
    GlobalChannel channel = corrupt_csi(topo, std::move(true_H), scenario.e_H, csi);

    const Demand true_demand =
        build_demand(sp_precode_products(channel.true_H, topo, scenario.sp), topo);
    const Demand est_demand =
        build_demand(sp_precode_products(channel.est_H, topo, scenario.sp), topo);

    SlotResult slot;
    try {
      slot = run_slot(queues, topo, channel, est_demand, true_demand, scenario.params);
    } catch (const std::exception& e) {
      throw std::runtime_error("run_horizon: slot " + std::to_string(t) + ": " + e.what());
    }

    run.stats.B_realized = std::max(run.stats.B_realized, slot.channel_norm);
    run.stats.delta_hat = std::max(run.stats.delta_hat, slot.max_block_error_ratio);
    for (int c = 0; c < C; ++c) {
      for (int m = 0; m < M; ++m) {
        const CMat est_local = channel_block(channel.est_H, topo, c, c, m);
        const CMat true_local = channel_block(channel.true_H, topo, c, c, m);
        run.stats.min_est_block_norm(c, m) =
            std::min(run.stats.min_est_block_norm(c, m), est_local.norm());
        Eigen::SelfAdjointEigenSolver<CMat> est_eig(est_local * est_local.adjoint());
        Eigen::SelfAdjointEigenSolver<CMat> true_eig(true_local * true_local.adjoint());
        run.stats.min_est_eig(c, m) =
            std::min(run.stats.min_est_eig(c, m), est_eig.eigenvalues().minCoeff());
        run.stats.min_true_eig(c, m) =
            std::min(run.stats.min_true_eig(c, m), true_eig.eigenvalues().minCoeff());
      }
    }

    if (observer) (*observer)(t, channel, est_demand, true_demand, slot);
    run.slots.push_back(std::move(slot));
  }
  return run;
}

}  // namespace wnv
