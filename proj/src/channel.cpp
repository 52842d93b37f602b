// SPDX-License-Identifier: Apache-2.0
#include "wnv/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace wnv {

double path_loss_db(double distance_m, double shadowing_db) {
  if (distance_m <= 0.0) throw std::invalid_argument("path_loss: distance must be > 0");
  return -31.54 - 33.0 * std::log10(distance_m) + shadowing_db;
}

double path_loss_gain(double distance_m, double shadowing_db) {
  return std::pow(10.0, path_loss_db(distance_m, shadowing_db) / 10.0);
}

LargeScaleGains compute_gains(const Topology& topo, const std::vector<Vec2>& users,
                              double shadow_sigma_db, RngStream& rng,
                              double min_distance_m) {
  const int K = topo.total_users();
  const int C = topo.cell_count;
  if (static_cast<int>(users.size()) != K)
    throw std::invalid_argument("compute_gains: user position count mismatch");
  LargeScaleGains g;
  g.beta.resize(K, C);
  g.distance_m.resize(K, C);
  g.shadowing_db.resize(K, C);
  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < C; ++l) {
      const double dx = users[k].x - topo.bs_positions[l].x;
      const double dy = users[k].y - topo.bs_positions[l].y;
      const double d = std::max(std::hypot(dx, dy), min_distance_m);
      const double psi = shadow_sigma_db * rng.normal();
      g.distance_m(k, l) = d;
      g.shadowing_db(k, l) = psi;
      g.beta(k, l) = path_loss_gain(d, psi);
    }
  }
  return g;
}

CMat draw_channel(const Topology& topo, const LargeScaleGains& gains, RngStream& rng) {
  const int K = topo.total_users();
  const int N = topo.total_antennas();
  CMat H(K, N);
  for (int k = 0; k < K; ++k) {
    int col = 0;
    for (int l = 0; l < topo.cell_count; ++l) {
      const double amp = std::sqrt(gains.beta(k, l));
      for (int n = 0; n < topo.antennas_per_bs[l]; ++n, ++col)
        H(k, col) = amp * rng.complex_normal();
    }
  }
  return H;
}

GlobalChannel corrupt_csi(const Topology& topo, CMat true_H, double e_H, RngStream& rng) {
  if (e_H < 0.0) throw std::invalid_argument("corrupt_csi: e_H must be >= 0");
  GlobalChannel gc;
  const int K = true_H.rows();
  const int N = true_H.cols();
  gc.error_H.resize(K, N);
  for (int k = 0; k < K; ++k)
    for (int n = 0; n < N; ++n)
      gc.error_H(k, n) = std::abs(true_H(k, n)) * e_H * rng.complex_normal();
  gc.est_H = true_H - gc.error_H;
  // re-derive the true channel from the stored pair so that
  // est_H + error_H == true_H holds bitwise (the adjustment is <= 1 ulp)
  gc.true_H = gc.est_H + gc.error_H;
  gc.e_H = e_H;
  gc.max_block_error_ratio = 0.0;
  for (int c = 0; c < topo.cell_count; ++c) {
    for (int l = 0; l < topo.cell_count; ++l) {
      for (int m = 0; m < topo.sp_count; ++m) {
        const double denom = channel_block(gc.true_H, topo, c, l, m).norm();
        if (denom <= 0.0) continue;
        const double ratio = channel_block(gc.error_H, topo, c, l, m).norm() / denom;
        gc.max_block_error_ratio = std::max(gc.max_block_error_ratio, ratio);
      }
    }
  }
  return gc;
}

double channel_bound(const Topology& topo, const LargeScaleGains& gains) {
  double sum = 0.0;
  for (int c = 0; c < topo.cell_count; ++c) {
    const int off = topo.cell_row_offset(c);
    const int kc = topo.cell_users(c);
    double cell_sum = 0.0;
    for (int k = 0; k < kc; ++k) cell_sum += gains.beta(off + k, c);
    sum += topo.antennas_per_bs[c] * cell_sum;
  }
  return 1.645 * std::sqrt(sum);
}

Eigen::Block<const CMat> channel_block(const CMat& H, const Topology& topo,
                                       int c, int l, int m) {
  return H.block(topo.sp_row_offset(c, m), topo.bs_col_offset(l),
                 topo.users_per_sp[c][m], topo.antennas_per_bs[l]);
}

Eigen::Block<const CMat> bs_columns(const CMat& H, const Topology& topo, int l) {
  return H.block(0, topo.bs_col_offset(l), H.rows(), topo.antennas_per_bs[l]);
}

}  // namespace wnv
