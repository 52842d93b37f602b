// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "wnv/channel.hpp"

namespace wnv {

enum class PrecodingScheme { Mrt, Zf };

enum class ZfSingularPolicy { Abort, FallbackMrt };

/// Per-SP precoding configuration: scheme and power split per cell.
struct SpConfig {
  std::vector<std::vector<PrecodingScheme>> scheme;  // [c][m]
  std::vector<std::vector<double>> power_w;          // [c][m] = P_m^c
  double zf_condition_cap = 1e8;
  ZfSingularPolicy on_singular = ZfSingularPolicy::Abort;

  /// Equal split P_m^c = P_max^c / M with one scheme for everybody.
  static SpConfig equal_split(const Topology& topo, const std::vector<double>& p_max_w,
                              PrecodingScheme scheme);

  void validate(const Topology& topo, const std::vector<double>& p_max_w) const;
};

/// MRT precoder sqrt(P) * H^H / ||H||_F.  ||W||_F^2 = P exactly.
CMat mrt_precoder(const CMat& H_local, double power_w);

/// ZF precoder sqrt(P) * H^H (H H^H)^{-1} / sqrt(tr{(H H^H)^{-1}}).
/// H * W is a scaled identity. Rejects rank-deficient or ill-conditioned
/// H H^H (condition number above the cap).
CMat zf_precoder(const CMat& H_local, double power_w, double condition_cap = 1e8);

/// Per-cell virtualization demand and its padded / global assemblies.
struct Demand {
  std::vector<CMat> per_cell;  // D^c, K^c x K^c block-diagonal
  std::vector<CMat> padded;    // G^c, K x K^c (D^c at cell c's row offset)
  CMat global;                 // D', K x K block-diagonal
};

/// Products H_m^{cc} * W_m^c for every (cell, SP); the demand blocks.
/// Each block is a pure function of the local block and that SP's config.
std::vector<std::vector<CMat>> sp_precode_products(const CMat& H, const Topology& topo,
                                                   const SpConfig& sp);

/// Assembles D^c, G^c and D' from the per-SP blocks.
Demand build_demand(const std::vector<std::vector<CMat>>& blocks, const Topology& topo);

/// ||D' - D_hat'||_F between demands from true and estimated CSI.
double demand_deviation(const Demand& true_demand, const Demand& est_demand);

struct DemandBoundConstants {
  double eta_prime = 0.0;
  double B = 0.0;
  double delta_hat = 0.0;
};

struct DeviationCheck {
  double deviation = 0.0;
  double bound = 0.0;  // eta' * B * delta_hat
};

DeviationCheck demand_deviation(const Demand& true_demand, const Demand& est_demand,
                                const DemandBoundConstants& constants);

}  // namespace wnv
