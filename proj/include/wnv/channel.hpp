// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "wnv/topology.hpp"

namespace wnv {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

/// Large-scale link gains, one value per (global user row, BS) pair.
/// Drawn once per scenario; small-scale fading is redrawn every slot.
struct LargeScaleGains {
  RMat beta;          // K x C, linear power gain
  RMat distance_m;    // K x C, after the minimum-distance floor
  RMat shadowing_db;  // K x C
};

/// Urban micro path loss in dB: -31.54 - 33*log10(d) + shadowing.
double path_loss_db(double distance_m, double shadowing_db);

/// Linear power gain for the same model. Rejects d <= 0.
double path_loss_gain(double distance_m, double shadowing_db);

/// Gains for every user-BS pair. Shadowing is real Gaussian in dB with
/// the given sigma, one draw per pair. Distances below min_distance_m
/// are clamped so the gain stays bounded.
LargeScaleGains compute_gains(const Topology& topo, const std::vector<Vec2>& users,
                              double shadow_sigma_db, RngStream& rng,
                              double min_distance_m = 10.0);

/// True channel plus its corrupted estimate for one slot.
struct GlobalChannel {
  CMat true_H;   // K x N
  CMat est_H;    // K x N, est = true - error
  CMat error_H;  // K x N
  double e_H = 0.0;
  // max over (c, l, m) blocks of ||error block||_F / ||true block||_F
  double max_block_error_ratio = 0.0;
};

/// One slot of Rayleigh fading: row block for user k is sqrt(beta) * g
/// with g having i.i.d. CN(0,1) entries.
CMat draw_channel(const Topology& topo, const LargeScaleGains& gains, RngStream& rng);

/// Per-entry error |h| * n with n ~ CN(0, e_H^2); e_H = 0 reproduces the
/// true channel exactly.
GlobalChannel corrupt_csi(const Topology& topo, CMat true_H, double e_H, RngStream& rng);

/// Chernoff-style channel norm bound B = 1.645 * sqrt(sum_c N^c sum_k beta_k^c),
/// with beta_k^c the gain from user k of cell c to its serving BS.
double channel_bound(const Topology& topo, const LargeScaleGains& gains);

/// Sub-block H_m^{cl}: SP m's users in cell c against BS l's antennas.
Eigen::Block<const CMat> channel_block(const CMat& H, const Topology& topo,
                                       int c, int l, int m);

/// Column block H^l of a global K x N matrix: all users against BS l.
Eigen::Block<const CMat> bs_columns(const CMat& H, const Topology& topo, int l);

}  // namespace wnv
