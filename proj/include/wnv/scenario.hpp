// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wnv/config.hpp"
#include "wnv/controller.hpp"

namespace wnv {

/// Builds the frozen pre-horizon state from a config: BS layout, user
/// placement, shadowing and large-scale gains, SP schemes/powers and the
/// drift-plus-penalty constants. Placement and gains come from the
/// "placement" substream, so two configs differing only in e_H or theta
/// share the same geometry.
Scenario build_scenario(const ScenarioConfig& config);

/// Scheme assignment for one cell row: SPs [0, mrt_count) use MRT, the
/// rest ZF. "mrt"/"zf" map to mrt_count = M / 0.
SpConfig make_sp_config(const Topology& topo, const ScenarioConfig& config);

}  // namespace wnv
