// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

namespace wnv {

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Scenario description as entered at the boundary: powers in dBm, error
/// levels as fractions. Derived linear-unit values are computed on demand.
struct ScenarioConfig {
  std::string preset_name = "custom";

  // [topology]
  int cells = 7;
  double radius_m = 500.0;
  int antennas_per_bs = 32;
  int sp_count = 4;
  int users_per_sp_per_cell = 2;

  // [power]
  double p_max_dbm = 39.0;
  double p_bar_dbm = 37.0;
  bool p_bar_infinite = false;  // long-term constraint disabled

  // [sp]
  std::string scheme = "mrt";  // mrt | zf | mixed
  int mrt_count = 0;           // only used when scheme = mixed
  std::string zf_on_singular = "abort";  // abort | mrt

  // [csi]
  double csi_error_std = 0.15;   // e_H
  double shadowing_sigma_db = 8.0;
  double min_distance_m = 10.0;

  // [algorithm]
  double theta = 1e-4;

  // [noise]
  double noise_density_dbm_hz = -174.0;
  double noise_figure_db = 10.0;
  double bandwidth_hz = 60e3;

  // [run]
  int horizon = 1000;
  std::uint64_t seed = 1;

  // [output]
  std::string out_dir = "out";
  bool dump_matrices = false;
  std::string baseline = "none";  // none | fd

  double p_max_w() const;
  double p_bar_w() const;  // +inf when p_bar_infinite
  double sigma_n2_w() const;

  void validate() const;       // throws with a field-qualified message
  std::string emit() const;    // canonical text; parse(emit()) == *this
};

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

/// Named presets; "urban-lte-default" carries the LTE urban-micro values.
ScenarioConfig preset(const std::string& name);

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

}  // namespace wnv
