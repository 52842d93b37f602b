// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wnv/fd_baseline.hpp"

using namespace wnv;

TEST_CASE("restrict_to_sp: shapes, powers and gain rows") {
  ScenarioConfig cfg = preset("small-test");
  cfg.sp_count = 2;
  cfg.users_per_sp_per_cell = 2;
  Scenario s = build_scenario(cfg);

  Scenario sub = restrict_to_sp(s, 1);
  CHECK(sub.topo.sp_count == 1);
  CHECK(sub.topo.total_users() == 4);  // 2 cells x 2 users
  for (int c = 0; c < 2; ++c) {
    CHECK(sub.params.p_max_w[c] == doctest::Approx(s.params.p_max_w[c] / 2.0));
    CHECK(sub.params.p_bar_w[c] == doctest::Approx(s.params.p_bar_w[c] / 2.0));
    CHECK(sub.sp.power_w[c][0] == doctest::Approx(s.sp.power_w[c][1]));
    // gains rows match SP 1's rows of the parent scenario
    const int off = s.topo.sp_row_offset(c, 1);
    for (int k = 0; k < 2; ++k)
      CHECK((sub.gains.beta.row(sub.topo.sp_row_offset(c, 0) + k) -
             s.gains.beta.row(off + k)).norm() == 0.0);
  }
  CHECK_THROWS_AS(restrict_to_sp(s, 5), std::invalid_argument);
}

TEST_CASE("fd with one SP degenerates to the spatial run") {
  ScenarioConfig cfg = preset("small-test");
  cfg.sp_count = 1;
  cfg.users_per_sp_per_cell = 2;
  cfg.csi_error_std = 0.1;
  Scenario s = build_scenario(cfg);

  RunResult spatial = run_horizon(s, 15);
  FdResult fd = run_fd(s, 15, 1e-14);
  REQUIRE(fd.per_sp.size() == 1);
  for (int t = 0; t < 15; ++t) {
    CHECK(fd.per_sp[0].slots[t].dev_true == spatial.slots[t].dev_true);
    CHECK(fd.per_sp[0].slots[t].power_w[0] == spatial.slots[t].power_w[0]);
  }
  CHECK(fd.rate_bar == doctest::Approx(rate_bar(spatial, 15, 1e-14)).epsilon(1e-12));
}

TEST_CASE("fd per-SP power cap is inherited") {
  ScenarioConfig cfg = preset("small-test");
  cfg.sp_count = 2;
  cfg.csi_error_std = 0.1;
  Scenario s = build_scenario(cfg);
  FdResult fd = run_fd(s, 20, 1e-14);
  REQUIRE(fd.per_sp.size() == 2);
  for (int m = 0; m < 2; ++m)
    for (const SlotResult& slot : fd.per_sp[m].slots)
      for (int c = 0; c < 2; ++c)
        CHECK(slot.power_w[c] <= s.params.p_max_w[c] / 2.0 * (1 + 1e-9));
}

TEST_CASE("fd isolation: SP i's run ignores SP j's channels") {
  ScenarioConfig cfg = preset("small-test");
  cfg.sp_count = 2;
  cfg.csi_error_std = 0.05;
  Scenario s = build_scenario(cfg);

  Scenario mutated = s;
  // wreck SP 1's gains; SP 0's sub-run must be bitwise unchanged
  for (int c = 0; c < 2; ++c) {
    const int off = s.topo.sp_row_offset(c, 1);
    for (int k = 0; k < 2; ++k) mutated.gains.beta.row(off + k) *= 17.0;
  }

  FdResult a = run_fd(s, 10, 1e-14);
  FdResult b = run_fd(mutated, 10, 1e-14);
  for (int t = 0; t < 10; ++t) {
    CHECK(a.per_sp[0].slots[t].dev_true == b.per_sp[0].slots[t].dev_true);
    CHECK((a.per_sp[0].slots[t].cells[0].V_star.array() ==
           b.per_sp[0].slots[t].cells[0].V_star.array()).all());
  }
}

TEST_CASE("fd rate aggregation weights SPs by user count and 1/M") {
  ScenarioConfig cfg = preset("small-test");
  cfg.sp_count = 2;
  Scenario s = build_scenario(cfg);
  const double sigma = 1e-14;
  const int T = 8;
  FdResult fd = run_fd(s, T, sigma);

  // recompute the final value from the per-SP runs
  double total = 0.0;
  int users = 0;
  for (int m = 0; m < 2; ++m) {
    users += fd.per_sp[m].topo.total_users();
    for (int t = 0; t < T; ++t) {
      const SlotResult& slot = fd.per_sp[m].slots[t];
      for (int k = 0; k < slot.signal_pow.size(); ++k)
        total += std::log2(1.0 + slot.signal_pow(k) /
                                     (slot.interference_pow(k) + sigma / 2.0)) / 2.0;
    }
  }
  CHECK(fd.rate_bar == doctest::Approx(total / (T * users)).epsilon(1e-12));
}
