// SPDX-License-Identifier: Apache-2.0
#include "wnv/topology.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wnv {

namespace {
constexpr double kSqrt3 = 1.7320508075688772935;
}

Topology Topology::make_hex(int cells, double radius_m, int antennas_per_bs,
                            int sp_count, int users_per_sp_per_cell) {
  Topology t;
  t.cell_count = cells;
  t.radius_m = radius_m;
  t.bs_positions = hex_grid_centers(cells, radius_m);
  t.antennas_per_bs.assign(cells, antennas_per_bs);
  t.sp_count = sp_count;
  t.users_per_sp.assign(cells, std::vector<int>(sp_count, users_per_sp_per_cell));
  t.validate();
  return t;
}

void Topology::validate() const {
  if (cell_count < 1) throw std::invalid_argument("topology: cell_count must be >= 1");
  if (radius_m <= 0) throw std::invalid_argument("topology: radius_m must be > 0");
  if (static_cast<int>(bs_positions.size()) != cell_count)
    throw std::invalid_argument("topology: bs_positions size mismatch");
  if (static_cast<int>(antennas_per_bs.size()) != cell_count)
    throw std::invalid_argument("topology: antennas_per_bs size mismatch");
  if (static_cast<int>(users_per_sp.size()) != cell_count)
    throw std::invalid_argument("topology: users_per_sp size mismatch");
  if (sp_count < 1) throw std::invalid_argument("topology: sp_count must be >= 1");
  for (int c = 0; c < cell_count; ++c) {
    if (antennas_per_bs[c] < 1)
      throw std::invalid_argument("topology: antennas_per_bs[" + std::to_string(c) + "] must be >= 1");
    if (static_cast<int>(users_per_sp[c].size()) != sp_count)
      throw std::invalid_argument("topology: users_per_sp[" + std::to_string(c) + "] size mismatch");
    for (int m = 0; m < sp_count; ++m)
      if (users_per_sp[c][m] < 1)
        throw std::invalid_argument("topology: users_per_sp[" + std::to_string(c) + "][" +
                                    std::to_string(m) + "] must be >= 1");
  }
}

int Topology::total_antennas() const {
  return std::accumulate(antennas_per_bs.begin(), antennas_per_bs.end(), 0);
}

int Topology::total_users() const {
  int k = 0;
  for (int c = 0; c < cell_count; ++c) k += cell_users(c);
  return k;
}

int Topology::cell_users(int c) const {
  return std::accumulate(users_per_sp[c].begin(), users_per_sp[c].end(), 0);
}

int Topology::cell_row_offset(int c) const {
  int off = 0;
  for (int i = 0; i < c; ++i) off += cell_users(i);
  return off;
}

int Topology::sp_row_offset(int c, int m) const {
  int off = cell_row_offset(c);
  for (int i = 0; i < m; ++i) off += users_per_sp[c][i];
  return off;
}

int Topology::bs_col_offset(int l) const {
  int off = 0;
  for (int i = 0; i < l; ++i) off += antennas_per_bs[i];
  return off;
}

std::vector<Vec2> hex_grid_centers(int count, double radius_m) {
  if (count < 1) throw std::invalid_argument("hex_grid_centers: count must be >= 1");
  // Axial hex lattice; (q, r) maps to q*A + r*B with |A| = |B| = sqrt(3)*R
  // and a 60-degree angle between them, so all six neighbors of a center
  // sit at distance sqrt(3)*R.
  const double s = kSqrt3 * radius_m;
  auto to_xy = [s](int q, int r) {
    return Vec2{s * (kSqrt3 / 2.0) * q, s * (0.5 * q + r)};
  };
  static constexpr int dirs[6][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};
  std::vector<Vec2> out;
  out.reserve(count);
  out.push_back(to_xy(0, 0));
  for (int ring = 1; static_cast<int>(out.size()) < count; ++ring) {
    int q = dirs[4][0] * ring;
    int r = dirs[4][1] * ring;
    for (int side = 0; side < 6 && static_cast<int>(out.size()) < count; ++side) {
      for (int step = 0; step < ring && static_cast<int>(out.size()) < count; ++step) {
        out.push_back(to_xy(q, r));
        q += dirs[side][0];
        r += dirs[side][1];
      }
    }
  }
  return out;
}

bool point_in_hexagon(const Vec2& p, const Vec2& center, double radius_m) {
  // Vertices at angles k*60 deg; edge outward normals at 30 + k*60 deg.
  const double apothem = radius_m * kSqrt3 / 2.0;
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  for (int k = 0; k < 6; ++k) {
    const double ang = (30.0 + 60.0 * k) * M_PI / 180.0;
    if (dx * std::cos(ang) + dy * std::sin(ang) > apothem + 1e-12 * radius_m) return false;
  }
  return true;
}

Vec2 sample_hexagon(const Vec2& center, double radius_m, RngStream& rng) {
  const double half_h = radius_m * kSqrt3 / 2.0;
  for (;;) {
    Vec2 p{center.x + rng.uniform(-radius_m, radius_m),
           center.y + rng.uniform(-half_h, half_h)};
    if (point_in_hexagon(p, center, radius_m)) return p;
  }
}

std::vector<Vec2> place_users(const Topology& topo, RngStream& rng) {
  topo.validate();
  std::vector<Vec2> users;
  users.reserve(topo.total_users());
  for (int c = 0; c < topo.cell_count; ++c)
    for (int m = 0; m < topo.sp_count; ++m)
      for (int k = 0; k < topo.users_per_sp[c][m]; ++k)
        users.push_back(sample_hexagon(topo.bs_positions[c], topo.radius_m, rng));
  return users;
}

}  // namespace wnv
