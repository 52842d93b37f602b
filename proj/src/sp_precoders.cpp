// SPDX-License-Identifier: Apache-2.0
#include "wnv/sp_precoders.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wnv {

SpConfig SpConfig::equal_split(const Topology& topo, const std::vector<double>& p_max_w,
                               PrecodingScheme scheme) {
  SpConfig sp;
  sp.scheme.assign(topo.cell_count, std::vector<PrecodingScheme>(topo.sp_count, scheme));
  sp.power_w.resize(topo.cell_count);
  for (int c = 0; c < topo.cell_count; ++c)
    sp.power_w[c].assign(topo.sp_count, p_max_w[c] / topo.sp_count);
  return sp;
}

void SpConfig::validate(const Topology& topo, const std::vector<double>& p_max_w) const {
  if (static_cast<int>(scheme.size()) != topo.cell_count ||
      static_cast<int>(power_w.size()) != topo.cell_count)
    throw std::invalid_argument("sp_config: per-cell size mismatch");
  for (int c = 0; c < topo.cell_count; ++c) {
    if (static_cast<int>(scheme[c].size()) != topo.sp_count ||
        static_cast<int>(power_w[c].size()) != topo.sp_count)
      throw std::invalid_argument("sp_config: per-SP size mismatch in cell " + std::to_string(c));
    double total = 0.0;
    for (int m = 0; m < topo.sp_count; ++m) {
      if (power_w[c][m] <= 0.0)
        throw std::invalid_argument("sp_config: P_m^c must be > 0 (cell " + std::to_string(c) +
                                    ", sp " + std::to_string(m) + ")");
      total += power_w[c][m];
      if (scheme[c][m] == PrecodingScheme::Zf &&
          topo.users_per_sp[c][m] > topo.antennas_per_bs[c])
        throw std::invalid_argument("sp_config: ZF requires K_m^c <= N^c (cell " +
                                    std::to_string(c) + ", sp " + std::to_string(m) + ")");
    }
    if (total > p_max_w[c] * (1.0 + 1e-12))
      throw std::invalid_argument("sp_config: sum of P_m^c exceeds P_max^c in cell " +
                                  std::to_string(c));
  }
}

CMat mrt_precoder(const CMat& H_local, double power_w) {
  const double norm = H_local.norm();
  if (norm <= 0.0) throw std::invalid_argument("mrt_precoder: zero channel matrix");
  return std::sqrt(power_w) / norm * H_local.adjoint();
}

CMat zf_precoder(const CMat& H_local, double power_w, double condition_cap) {
  const CMat gram = H_local * H_local.adjoint();  // K_m x K_m Hermitian
  Eigen::SelfAdjointEigenSolver<CMat> eig(gram);
  const auto& w = eig.eigenvalues();
  const double w_min = w.minCoeff();
  const double w_max = w.maxCoeff();
  if (!(w_min > 0.0) || w_max / w_min > condition_cap)
    throw std::runtime_error("zf_precoder: H*H^H singular or ill-conditioned (cond " +
                             std::to_string(w_min > 0.0 ? w_max / w_min : INFINITY) + ")");
  const CMat inv = eig.eigenvectors() * w.cwiseInverse().asDiagonal() *
                   eig.eigenvectors().adjoint();
  const double tr_inv = w.cwiseInverse().sum();
  return std::sqrt(power_w / tr_inv) * (H_local.adjoint() * inv);
}

std::vector<std::vector<CMat>> sp_precode_products(const CMat& H, const Topology& topo,
                                                   const SpConfig& sp) {
  std::vector<std::vector<CMat>> blocks(topo.cell_count);
  for (int c = 0; c < topo.cell_count; ++c) {
    blocks[c].resize(topo.sp_count);
    for (int m = 0; m < topo.sp_count; ++m) {
      const CMat local = channel_block(H, topo, c, c, m);
      CMat w;
      if (sp.scheme[c][m] == PrecodingScheme::Mrt) {
        w = mrt_precoder(local, sp.power_w[c][m]);
      } else {
        try {
          w = zf_precoder(local, sp.power_w[c][m], sp.zf_condition_cap);
        } catch (const std::runtime_error& e) {
          if (sp.on_singular == ZfSingularPolicy::FallbackMrt)
            w = mrt_precoder(local, sp.power_w[c][m]);
          else
            throw std::runtime_error(std::string(e.what()) + " [cell " + std::to_string(c) +
                                     ", sp " + std::to_string(m) + "]");
        }
      }
      blocks[c][m] = local * w;
    }
  }
  return blocks;
}

Demand build_demand(const std::vector<std::vector<CMat>>& blocks, const Topology& topo) {
  const int K = topo.total_users();
  Demand d;
  d.per_cell.resize(topo.cell_count);
  d.padded.resize(topo.cell_count);
  d.global = CMat::Zero(K, K);
  for (int c = 0; c < topo.cell_count; ++c) {
    const int kc = topo.cell_users(c);
    CMat dc = CMat::Zero(kc, kc);
    int off = 0;
    for (int m = 0; m < topo.sp_count; ++m) {
      const int km = topo.users_per_sp[c][m];
      const CMat& blk = blocks[c][m];
      if (blk.rows() != km || blk.cols() != km)
        throw std::invalid_argument("build_demand: block dimension mismatch (cell " +
                                    std::to_string(c) + ", sp " + std::to_string(m) + ")");
      dc.block(off, off, km, km) = blk;
      off += km;
    }
    const int row0 = topo.cell_row_offset(c);
    d.padded[c] = CMat::Zero(K, kc);
    d.padded[c].middleRows(row0, kc) = dc;
    d.global.block(row0, row0, kc, kc) = dc;
    d.per_cell[c] = std::move(dc);
  }
  return d;
}

double demand_deviation(const Demand& true_demand, const Demand& est_demand) {
  if (true_demand.global.rows() != est_demand.global.rows() ||
      true_demand.global.cols() != est_demand.global.cols())
    throw std::invalid_argument("demand_deviation: shape mismatch");
  return (true_demand.global - est_demand.global).norm();
}

DeviationCheck demand_deviation(const Demand& true_demand, const Demand& est_demand,
                                const DemandBoundConstants& constants) {
  DeviationCheck out;
  out.deviation = demand_deviation(true_demand, est_demand);
  out.bound = constants.eta_prime * constants.B * constants.delta_hat;
  return out;
}

}  // namespace wnv
