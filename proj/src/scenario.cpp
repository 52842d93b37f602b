// SPDX-License-Identifier: Apache-2.0
#include "wnv/scenario.hpp"

#include <stdexcept>

namespace wnv {

SpConfig make_sp_config(const Topology& topo, const ScenarioConfig& config) {
  std::vector<double> p_max_w(topo.cell_count, config.p_max_w());
  SpConfig sp = SpConfig::equal_split(topo, p_max_w, PrecodingScheme::Mrt);
  int mrt = config.sp_count;
  if (config.scheme == "zf") mrt = 0;
  else if (config.scheme == "mixed") mrt = config.mrt_count;
  for (int c = 0; c < topo.cell_count; ++c)
    for (int m = 0; m < topo.sp_count; ++m)
      sp.scheme[c][m] = m < mrt ? PrecodingScheme::Mrt : PrecodingScheme::Zf;
  sp.on_singular = config.zf_on_singular == "mrt" ? ZfSingularPolicy::FallbackMrt
                                                  : ZfSingularPolicy::Abort;
  sp.validate(topo, p_max_w);
  return sp;
}

Scenario build_scenario(const ScenarioConfig& config) {
  config.validate();
  Scenario s;
  s.topo = Topology::make_hex(config.cells, config.radius_m, config.antennas_per_bs,
                              config.sp_count, config.users_per_sp_per_cell);
  RngStream placement = RngStream::substream(config.seed, "placement");
  s.users = place_users(s.topo, placement);
  s.gains = compute_gains(s.topo, s.users, config.shadowing_sigma_db, placement,
                          config.min_distance_m);
  s.sp = make_sp_config(s.topo, config);
  const std::vector<double> p_max_w(config.cells, config.p_max_w());
  const std::vector<double> p_bar_w(config.cells, config.p_bar_w());
  s.params = compute_weight(config.theta, s.topo, s.gains, s.sp, p_max_w, p_bar_w);
  s.e_H = config.csi_error_std;
  s.fading_seed = mix_seed(config.seed, "fading");
  s.csi_seed = mix_seed(config.seed, "csi");
  return s;
}

}  // namespace wnv
