// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wnv/metrics.hpp"
#include "wnv/scenario.hpp"

namespace wnv {

/// Frequency-division physical isolation: each SP gets bandwidth B_W/M,
/// power limits P_max^c/M and P_bar^c/M, and runs the online controller
/// alone on its own sub-band with an independent fading realization.
struct FdResult {
  std::vector<RunResult> per_sp;     // one controller run per SP
  std::vector<int> sp_user_count;    // K_m per SP (network-wide)
  double rate_bar = 0.0;             // final bandwidth-normalized rate
  double steady_rate = 0.0;          // last-quarter mean
  std::vector<double> rate_series;   // cumulative, per prefix T
};

/// Restriction of a scenario to one SP: that SP's users and gains only,
/// per-SP power limits, recomputed drift constants. With M = 1 this is
/// the identity and the sub-run reuses the spatial fading stream.
Scenario restrict_to_sp(const Scenario& scenario, int sp_index);

/// Runs the M per-SP sub-runs and aggregates the bandwidth-normalized
/// rate. sigma_n2_full is the full-band noise power; each sub-band sees
/// sigma_n2_full / M.
FdResult run_fd(const Scenario& scenario, int horizon, double sigma_n2_full);

}  // namespace wnv
