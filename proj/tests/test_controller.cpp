// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wnv/config.hpp"
#include "wnv/metrics.hpp"
#include "wnv/scenario.hpp"

using namespace wnv;

namespace {

Scenario small_scenario(double e_H = 0.0, int cells = 2, int antennas = 8) {
  ScenarioConfig cfg = preset("small-test");
  cfg.cells = cells;
  cfg.antennas_per_bs = antennas;
  cfg.csi_error_std = e_H;
  cfg.seed = 11;
  return build_scenario(cfg);
}

struct SlotInputs {
  GlobalChannel channel;
  Demand est;
  Demand truth;
};

SlotInputs make_slot(const Scenario& s, RngStream& fading, RngStream& csi) {
  SlotInputs si;
  CMat H = draw_channel(s.topo, s.gains, fading);
  si.channel = corrupt_csi(s.topo, std::move(H), s.e_H, csi);
  si.truth = build_demand(sp_precode_products(si.channel.true_H, s.topo, s.sp), s.topo);
  si.est = build_demand(sp_precode_products(si.channel.est_H, s.topo, s.sp), s.topo);
  return si;
}

}  // namespace

TEST_CASE("compute_weight constants for the LTE defaults") {
  // S' = 0.5 * 7 * max{(P_max - P_bar)^2, P_bar^2}, xi = sqrt(32 P_max / P_bar)
  ScenarioConfig cfg = preset("urban-lte-default");
  Scenario s = build_scenario(cfg);
  CHECK(s.params.S_prime == doctest::Approx(87.91602510283536).epsilon(1e-12));
  for (double xi : s.params.xi)
    CHECK(xi == doctest::Approx(7.121557565501777).epsilon(1e-12));
  const double zeta2 = 7.0 * dbm_to_watt(39.0);
  CHECK(s.params.zeta_prime == doctest::Approx(std::sqrt(zeta2)).epsilon(1e-12));
  CHECK(s.params.epsilon ==
        doctest::Approx(1e-4 * zeta2 * s.params.B * s.params.B).epsilon(1e-12));
  CHECK(s.params.U == doctest::Approx(s.params.S_prime / s.params.epsilon).epsilon(1e-12));

  // halving theta doubles U exactly
  ScenarioConfig cfg2 = cfg;
  cfg2.theta = cfg.theta / 2.0;
  Scenario s2 = build_scenario(cfg2);
  CHECK(s2.params.U == doctest::Approx(2.0 * s.params.U).epsilon(1e-12));

  CHECK_THROWS_AS(
      compute_weight(0.0, s.topo, s.gains, s.sp, s.params.p_max_w, s.params.p_bar_w),
      std::invalid_argument);
}

TEST_CASE("compute_weight with the long-term constraint disabled") {
  ScenarioConfig cfg = preset("small-test");
  cfg.p_bar_infinite = true;
  Scenario s = build_scenario(cfg);
  CHECK(!s.params.queues_enabled);
  CHECK(s.params.U == 1.0);
  CHECK(s.params.S_prime == 0.0);
  for (double pb : s.params.p_bar_w) CHECK(std::isinf(pb));
}

TEST_CASE("update_queue recursion") {
  const double p_bar = dbm_to_watt(37.0);
  const double p_max = dbm_to_watt(39.0);
  CHECK(update_queue(0.0, p_bar, p_bar) == 0.0);
  CHECK(update_queue(0.0, p_max, p_bar) ==
        doctest::Approx(2.9314100109700885).epsilon(1e-12));
  CHECK(update_queue(1.0, 0.0, p_bar) == 0.0);
  CHECK(update_queue(4.0, 6.0, 5.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(update_queue(-1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("run_slot: single cell equals the one-cell algorithm step") {
  Scenario s = small_scenario(0.0, 1);
  RngStream fading(s.fading_seed), csi(s.csi_seed);
  SlotInputs si = make_slot(s, fading, csi);

  QueueState q(1);
  q.z[0] = 0.4;
  SlotResult slot = run_slot(q, s.topo, si.channel, si.est, si.truth, s.params);

  SolverInput in;
  in.H_hat = si.channel.est_H;
  in.G_hat = si.est.padded[0];
  in.Z = 0.4;
  in.U = s.params.U;
  in.P_max = s.params.p_max_w[0];
  in.lambda_bracket_init = s.params.U * s.params.B * s.params.B * s.params.zeta_prime /
                           std::sqrt(s.params.p_max_w[0]);
  SolverOutput direct = solve_cell(in);
  CHECK((direct.V_star.array() == slot.cells[0].V_star.array()).all());
  CHECK(slot.z_next[0] ==
        doctest::Approx(update_queue(0.4, direct.achieved_power, s.params.p_bar_w[0])));
}

TEST_CASE("run_slot: cell order does not change the result") {
  Scenario s = small_scenario(0.1, 3);
  RngStream fading(s.fading_seed), csi(s.csi_seed);
  SlotInputs si = make_slot(s, fading, csi);

  QueueState q1(3), q2(3);
  q1.z = {0.1, 0.0, 2.0};
  q2.z = q1.z;
  SlotResult a = run_slot(q1, s.topo, si.channel, si.est, si.truth, s.params);
  const std::vector<int> order = {2, 0, 1};
  SlotResult b = run_slot(q2, s.topo, si.channel, si.est, si.truth, s.params, &order);

  CHECK(a.dev_true == b.dev_true);
  CHECK(a.dev_est == b.dev_est);
  for (int c = 0; c < 3; ++c) {
    CHECK((a.cells[c].V_star.array() == b.cells[c].V_star.array()).all());
    CHECK(a.z_next[c] == b.z_next[c]);
  }
}

TEST_CASE("run_slot: perfect CSI, empty queue, feasible min-norm fits exactly") {
  // K < N^c and ample power: the min-norm solution gives H V = G exactly
  ScenarioConfig cfg = preset("small-test");
  cfg.cells = 1;
  cfg.antennas_per_bs = 16;
  cfg.sp_count = 2;
  cfg.users_per_sp_per_cell = 2;
  cfg.csi_error_std = 0.0;
  Scenario s = build_scenario(cfg);
  // leave the InP plenty of headroom over the SPs' own allocations
  for (auto& cell : s.sp.power_w)
    for (double& p : cell) p *= 1e-4;
  RngStream fading(s.fading_seed), csi(s.csi_seed);
  SlotInputs si = make_slot(s, fading, csi);
  QueueState q(1);
  SlotResult slot = run_slot(q, s.topo, si.channel, si.est, si.truth, s.params);
  CHECK(slot.cells[0].case_tag == SolveCase::MinnormUnderdetermined);
  CHECK(slot.dev_true <= 1e-15 * slot.demand_norm * slot.demand_norm);
}

TEST_CASE("run_horizon: one-slot unroll and determinism") {
  Scenario s = small_scenario(0.15);
  RunResult one = run_horizon(s, 1);
  REQUIRE(one.slots.size() == 1);
  for (int c = 0; c < 2; ++c) {
    CHECK(one.slots[0].z_used[c] == 0.0);
    CHECK(one.slots[0].z_next[c] ==
          doctest::Approx(std::max(one.slots[0].power_w[c] - s.params.p_bar_w[c], 0.0)));
  }

  RunResult a = run_horizon(s, 12);
  RunResult b = run_horizon(s, 12);
  for (int t = 0; t < 12; ++t) {
    CHECK(a.slots[t].dev_true == b.slots[t].dev_true);
    for (int c = 0; c < 2; ++c)
      CHECK((a.slots[t].cells[c].V_star.array() == b.slots[t].cells[c].V_star.array()).all());
  }
  CHECK(a.stats.B_realized == b.stats.B_realized);
  CHECK(a.stats.delta_hat == b.stats.delta_hat);
}

TEST_CASE("run_horizon: deviation decomposes over cells") {
  Scenario s = small_scenario(0.1, 3);
  RngStream fading(s.fading_seed), csi(s.csi_seed);
  SlotInputs si = make_slot(s, fading, csi);
  QueueState q(3);
  SlotResult slot = run_slot(q, s.topo, si.channel, si.est, si.truth, s.params);

  double per_cell = 0.0;
  for (int c = 0; c < 3; ++c) {
    CMat truth_padded = si.truth.padded[c];
    per_cell += (bs_columns(si.channel.true_H, s.topo, c) * slot.cells[c].V_star -
                 truth_padded).squaredNorm();
  }
  CHECK(slot.dev_true == doctest::Approx(per_cell).epsilon(1e-10));
}

TEST_CASE("run_horizon: queue bound and per-slot feasibility hold") {
  Scenario s = small_scenario(0.15);
  RunResult run = run_horizon(s, 60);
  BoundReport report = bound_report(run);
  for (const BoundCheck& c : report.checks) {
    INFO(c.name, " cell ", c.cell, " lhs ", c.lhs, " rhs ", c.rhs);
    CHECK(c.pass);
  }
}

TEST_CASE("run_horizon: queues pinned at zero when P_bar is infinite") {
  ScenarioConfig cfg = preset("small-test");
  cfg.p_bar_infinite = true;
  cfg.csi_error_std = 0.1;
  Scenario s = build_scenario(cfg);
  RunResult run = run_horizon(s, 10);
  for (const SlotResult& slot : run.slots)
    for (int c = 0; c < 2; ++c) {
      CHECK(slot.z_used[c] == 0.0);
      CHECK(slot.z_next[c] == 0.0);
      CHECK(slot.power_w[c] <= s.params.p_max_w[c] * (1 + 1e-9));
    }
}
