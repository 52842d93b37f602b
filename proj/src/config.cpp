// SPDX-License-Identifier: Apache-2.0
#include "wnv/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wnv/metrics.hpp"

namespace wnv {

double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double watt_to_dbm(double watt) {
  if (watt <= 0.0) throw std::invalid_argument("watt_to_dbm: power must be > 0");
  return 10.0 * std::log10(watt * 1e3);
}

double ScenarioConfig::p_max_w() const { return dbm_to_watt(p_max_dbm); }

double ScenarioConfig::p_bar_w() const {
  return p_bar_infinite ? std::numeric_limits<double>::infinity() : dbm_to_watt(p_bar_dbm);
}

double ScenarioConfig::sigma_n2_w() const {
  return noise_power_w(noise_density_dbm_hz, bandwidth_hz, noise_figure_db);
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("config: " + field + ": " + why);
  };
  if (cells < 1) fail("topology.cells", "must be >= 1");
  if (radius_m <= 0) fail("topology.radius_m", "must be > 0");
  if (antennas_per_bs < 1) fail("topology.antennas_per_bs", "must be >= 1");
  if (sp_count < 1) fail("topology.sp_count", "must be >= 1");
  if (users_per_sp_per_cell < 1) fail("topology.users_per_sp_per_cell", "must be >= 1");
  if (!p_bar_infinite && p_bar_dbm > p_max_dbm)
    fail("power.p_bar_dbm", "P_bar must not exceed P_max");
  if (scheme != "mrt" && scheme != "zf" && scheme != "mixed")
    fail("sp.scheme", "must be one of mrt|zf|mixed");
  if (scheme == "mixed" && (mrt_count < 0 || mrt_count > sp_count))
    fail("sp.mrt_count", "must be in [0, sp_count]");
  if (zf_on_singular != "abort" && zf_on_singular != "mrt")
    fail("sp.zf_on_singular", "must be abort|mrt");
  const bool any_zf = scheme == "zf" || (scheme == "mixed" && mrt_count < sp_count);
  if (any_zf && users_per_sp_per_cell > antennas_per_bs)
    fail("sp.scheme", "ZF requires users_per_sp_per_cell <= antennas_per_bs");
  if (csi_error_std < 0) fail("csi.error_std", "must be >= 0");
  if (shadowing_sigma_db < 0) fail("csi.shadowing_sigma_db", "must be >= 0");
  if (min_distance_m <= 0) fail("csi.min_distance_m", "must be > 0");
  if (theta <= 0) fail("algorithm.theta", "must be > 0");
  if (bandwidth_hz <= 0) fail("noise.bandwidth_hz", "must be > 0");
  if (horizon < 1) fail("run.horizon", "must be >= 1");
  if (baseline != "none" && baseline != "fd") fail("output.baseline", "must be none|fd");
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string ScenarioConfig::emit() const {
  std::ostringstream os;
  os << "preset = " << preset_name << "\n";
  os << "[topology]\n";
  os << "cells = " << cells << "\n";
  os << "radius_m = " << fmt(radius_m) << "\n";
  os << "antennas_per_bs = " << antennas_per_bs << "\n";
  os << "sp_count = " << sp_count << "\n";
  os << "users_per_sp_per_cell = " << users_per_sp_per_cell << "\n";
  os << "[power]\n";
  os << "p_max_dbm = " << fmt(p_max_dbm) << "\n";
  os << "p_bar_dbm = " << (p_bar_infinite ? std::string("inf") : fmt(p_bar_dbm)) << "\n";
  os << "[sp]\n";
  os << "scheme = " << scheme << "\n";
  os << "mrt_count = " << mrt_count << "\n";
  os << "zf_on_singular = " << zf_on_singular << "\n";
  os << "[csi]\n";
  os << "error_std = " << fmt(csi_error_std) << "\n";
  os << "shadowing_sigma_db = " << fmt(shadowing_sigma_db) << "\n";
  os << "min_distance_m = " << fmt(min_distance_m) << "\n";
  os << "[algorithm]\n";
  os << "theta = " << fmt(theta) << "\n";
  os << "[noise]\n";
  os << "noise_density_dbm_hz = " << fmt(noise_density_dbm_hz) << "\n";
  os << "noise_figure_db = " << fmt(noise_figure_db) << "\n";
  os << "bandwidth_hz = " << fmt(bandwidth_hz) << "\n";
  os << "[run]\n";
  os << "horizon = " << horizon << "\n";
  os << "seed = " << seed << "\n";
  os << "[output]\n";
  os << "out_dir = " << out_dir << "\n";
  os << "dump_matrices = " << (dump_matrices ? "true" : "false") << "\n";
  os << "baseline = " << baseline << "\n";
  return os.str();
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  return a.emit() == b.emit();
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  if (name == "urban-lte-default") {
    c.preset_name = name;  // defaults above are exactly this preset
    return c;
  }
  if (name == "small-test") {
    c.preset_name = name;
    c.cells = 2;
    c.antennas_per_bs = 8;
    c.sp_count = 2;
    c.users_per_sp_per_cell = 2;
    c.horizon = 50;
    return c;
  }
  throw std::invalid_argument("config: unknown preset '" + name + "'");
}

namespace {

struct KeyValue {
  std::string section;
  std::string key;
  std::string value;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const KeyValue& kv) {
  try {
    size_t pos = 0;
    const double v = std::stod(kv.value, &pos);
    if (pos != kv.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + kv.section + "." + kv.key +
                                ": invalid number '" + kv.value + "'");
  }
}

long long parse_int(const KeyValue& kv) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(kv.value, &pos);
    if (pos != kv.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + kv.section + "." + kv.key +
                                ": invalid integer '" + kv.value + "'");
  }
}

bool parse_bool(const KeyValue& kv) {
  if (kv.value == "true") return true;
  if (kv.value == "false") return false;
  throw std::invalid_argument("config: " + kv.section + "." + kv.key +
                              ": expected true|false, got '" + kv.value + "'");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig c;
  std::istringstream is(text);
  std::string line, section;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got '" + line + "'");
    KeyValue kv{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    const std::string path = kv.section.empty() ? kv.key : kv.section + "." + kv.key;

    if (path == "preset") c.preset_name = kv.value;
    else if (path == "topology.cells") c.cells = static_cast<int>(parse_int(kv));
    else if (path == "topology.radius_m") c.radius_m = parse_double(kv);
    else if (path == "topology.antennas_per_bs") c.antennas_per_bs = static_cast<int>(parse_int(kv));
    else if (path == "topology.sp_count") c.sp_count = static_cast<int>(parse_int(kv));
    else if (path == "topology.users_per_sp_per_cell")
      c.users_per_sp_per_cell = static_cast<int>(parse_int(kv));
    else if (path == "power.p_max_dbm") c.p_max_dbm = parse_double(kv);
    else if (path == "power.p_bar_dbm") {
      if (kv.value == "inf") {
        c.p_bar_infinite = true;
        c.p_bar_dbm = 0.0;
      } else {
        c.p_bar_infinite = false;
        c.p_bar_dbm = parse_double(kv);
      }
    } else if (path == "sp.scheme") c.scheme = kv.value;
    else if (path == "sp.mrt_count") c.mrt_count = static_cast<int>(parse_int(kv));
    else if (path == "sp.zf_on_singular") c.zf_on_singular = kv.value;
    else if (path == "csi.error_std") c.csi_error_std = parse_double(kv);
    else if (path == "csi.shadowing_sigma_db") c.shadowing_sigma_db = parse_double(kv);
    else if (path == "csi.min_distance_m") c.min_distance_m = parse_double(kv);
    else if (path == "algorithm.theta") c.theta = parse_double(kv);
    else if (path == "noise.noise_density_dbm_hz") c.noise_density_dbm_hz = parse_double(kv);
    else if (path == "noise.noise_figure_db") c.noise_figure_db = parse_double(kv);
    else if (path == "noise.bandwidth_hz") c.bandwidth_hz = parse_double(kv);
    else if (path == "run.horizon") c.horizon = static_cast<int>(parse_int(kv));
    else if (path == "run.seed") c.seed = static_cast<std::uint64_t>(parse_int(kv));
    else if (path == "output.out_dir") c.out_dir = kv.value;
    else if (path == "output.dump_matrices") c.dump_matrices = parse_bool(kv);
    else if (path == "output.baseline") c.baseline = kv.value;
    else throw std::invalid_argument("config: " + path + ": unknown key");
  }
  if (c.p_bar_infinite) c.p_bar_dbm = 0.0;
  c.validate();
  return c;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace wnv
