// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "wnv/inp_solver.hpp"
#include "wnv/sp_precoders.hpp"

namespace wnv {

/// Drift-plus-penalty constants: epsilon = theta * zeta'^2 * B^2 and
/// U = S' / epsilon, with S', xi^c, zeta' from the per-cell power limits.
struct AlgoParams {
  double theta = 1e-4;
  double epsilon = 0.0;
  double U = 1.0;
  double S_prime = 0.0;
  double B = 0.0;            // channel norm bound from the large-scale gains
  double zeta_prime = 0.0;   // sqrt(sum_c sum_m P_m^c)
  std::vector<double> xi;    // per cell, sqrt(N^c / P_bar^c * sum_m P_m^c)
  std::vector<double> p_max_w;
  std::vector<double> p_bar_w;  // +inf disables the long-term constraint
  bool queues_enabled = true;

  static constexpr double kInfinitePower = std::numeric_limits<double>::infinity();
};

AlgoParams compute_weight(double theta, const Topology& topo, const LargeScaleGains& gains,
                          const SpConfig& sp, const std::vector<double>& p_max_w,
                          const std::vector<double>& p_bar_w);

/// Per-cell virtual queues driving the long-term power constraint.
struct QueueState {
  std::vector<double> z;
  explicit QueueState(int cells = 0) : z(cells, 0.0) {}
};

/// Z(t+1) = max{Z(t) + power - P_bar, 0}.
double update_queue(double z, double achieved_power_w, double p_bar_w);

/// Everything observable about one slot.
struct SlotResult {
  std::vector<SolverOutput> cells;
  std::vector<double> power_w;   // ||V^c||_F^2 per cell
  std::vector<double> z_used;    // queue values the solves saw
  std::vector<double> z_next;    // queues after the barrier update
  double dev_true = 0.0;         // ||H' V' - D'||_F^2   (true CSI, true demand)
  double dev_est = 0.0;          // ||H_hat' V' - D_hat'||_F^2
  double demand_norm = 0.0;      // ||D'||_F
  double est_demand_norm = 0.0;  // ||D_hat'||_F
  double demand_dev = 0.0;       // ||D' - D_hat'||_F
  double channel_norm = 0.0;     // ||H'||_F
  double max_block_error_ratio = 0.0;
  Eigen::VectorXd signal_pow;        // |[H'V']_kk|^2 per user
  Eigen::VectorXd interference_pow;  // sum_{j != k} |[H'V']_kj|^2 per user
};

/// One step of the online algorithm: per-cell P5 solves from local CSI
/// only, then a barrier queue update. Cell order must not affect the
/// result; a custom order can be supplied to exercise that contract.
SlotResult run_slot(QueueState& queues, const Topology& topo, const GlobalChannel& channel,
                    const Demand& est_demand, const Demand& true_demand,
                    const AlgoParams& params,
                    const std::vector<int>* cell_order = nullptr);

/// Frozen pre-horizon state: geometry, gains and constants are fixed,
/// only fading and CSI error are redrawn per slot.
struct Scenario {
  Topology topo;
  std::vector<Vec2> users;
  LargeScaleGains gains;
  SpConfig sp;
  AlgoParams params;
  double e_H = 0.0;
  std::uint64_t fading_seed = 0;
  std::uint64_t csi_seed = 0;
};

/// Running extrema needed by the empirical bound checks.
struct RunStats {
  double B_realized = 0.0;  // max_t ||H'(t)||_F
  double delta_hat = 0.0;   // max over blocks and slots of the error ratio
  RMat min_est_block_norm;  // [K x ...] indexed (c, m): min_t ||H_hat_m^cc||_F
  RMat min_est_eig;         // (c, m): min_t lambda_min(H_hat_m^cc H_hat_m^ccH)
  RMat min_true_eig;        // (c, m): min_t lambda_min(H_m^cc H_m^ccH)
};

struct RunResult {
  std::vector<SlotResult> slots;
  RunStats stats;
  AlgoParams params;
  Topology topo;
  SpConfig sp;
};

/// Optional per-slot observer; receives the channel, both demands and the
/// slot result (used by the matrix dumper).
using SlotObserver = std::function<void(int t, const GlobalChannel&, const Demand& est,
                                        const Demand& truth, const SlotResult&)>;

/// Full horizon loop: draw channel, corrupt CSI, SP demands, per-cell
/// solves, queue updates. Deterministic given the scenario seeds.
RunResult run_horizon(const Scenario& scenario, int horizon,
                      const SlotObserver* observer = nullptr);

}  // namespace wnv
