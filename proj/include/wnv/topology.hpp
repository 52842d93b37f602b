// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "wnv/rng.hpp"

namespace wnv {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Multi-cell network geometry: hexagonal cells, one BS at each cell
/// center, M service providers each with a fixed user count per cell.
///
/// Global user rows are ordered cell-major, then SP, then user index;
/// global antenna columns are ordered BS-major.
struct Topology {
  int cell_count = 1;                            // C
  double radius_m = 500.0;                       // hexagon circumradius R
  std::vector<Vec2> bs_positions;                // per cell
  std::vector<int> antennas_per_bs;              // N^c
  int sp_count = 1;                              // M
  std::vector<std::vector<int>> users_per_sp;    // [c][m] = K_m^c

  static Topology make_hex(int cells, double radius_m, int antennas_per_bs,
                           int sp_count, int users_per_sp_per_cell);

  void validate() const;  // throws std::invalid_argument on violation

  int total_antennas() const;            // N
  int total_users() const;               // K
  int cell_users(int c) const;           // K^c
  int cell_row_offset(int c) const;      // first global row of cell c
  int sp_row_offset(int c, int m) const; // first global row of SP m in cell c
  int bs_col_offset(int l) const;        // first global column of BS l
};

/// BS center positions for `count` cells: center cell plus spiral rings,
/// adjacent centers sqrt(3)*R apart.
std::vector<Vec2> hex_grid_centers(int count, double radius_m);

/// Regular hexagon with circumradius R and a vertex on the +x axis.
bool point_in_hexagon(const Vec2& p, const Vec2& center, double radius_m);

/// Uniform sample inside the hexagon by rejection from its bounding box.
Vec2 sample_hexagon(const Vec2& center, double radius_m, RngStream& rng);

/// One position per user, global row order, uniform over the serving
/// cell's hexagon. Deterministic given the stream state.
std::vector<Vec2> place_users(const Topology& topo, RngStream& rng);

}  // namespace wnv
