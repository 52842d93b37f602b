// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "wnv/channel.hpp"

namespace wnv {

/// Input of the per-cell per-slot problem:
///   minimize U ||H V - G||_F^2 + Z ||V||_F^2  s.t.  ||V||_F^2 <= P_max.
struct SolverInput {
  CMat H_hat;  // K x N
  CMat G_hat;  // K x Kc
  double Z = 0.0;
  double U = 1.0;
  double P_max = 1.0;
  double power_tol_rel = 1e-9;      // |power - P_max| <= tol * P_max at the bisected root
  double bracket_growth = 2.0;      // upper-bracket doubling factor
  double lambda_bracket_init = 0.0; // 0 = derive from the closed-form power bound
  int max_bisect_iters = 200;
};

enum class SolveCase {
  RidgeInactive,           // Z > 0, ridge at lambda = 0 already feasible
  RidgeActiveBisection,    // power cap active, lambda found by bisection
  MinnormUnderdetermined,  // Z = 0, K < N, min-norm solution feasible
  ExactOverdetermined,     // Z = 0, K >= N, least-squares solution feasible
};

const char* to_string(SolveCase c);

struct SolverOutput {
  CMat V_star;            // N x Kc
  double lambda_star = 0.0;
  SolveCase case_tag = SolveCase::RidgeInactive;
  double achieved_power = 0.0;  // ||V||_F^2
  double kkt_residual = 0.0;    // normalized stationarity residual
  bool degenerate_rank = false; // pinv path hit a rank-deficient channel
};

/// Thin SVD of H plus the projected demand, reused across all bisection
/// iterates so no matrix is re-factored inside the search.
struct ChannelDecomposition {
  Eigen::VectorXd sigma;      // r = min(K, N) singular values, descending
  CMat U;                     // K x r
  CMat V;                     // N x r
  CMat A;                     // r x Kc, U^H * G
  Eigen::VectorXd row_norm2;  // ||A_i||^2 per singular direction
  int rank = 0;               // numerical rank of H
  int rows = 0, cols = 0;

  static ChannelDecomposition make(const CMat& H, const CMat& G);
};

/// ||V(lambda)||_F^2 = sum_i sigma_i^2 ||A_i||^2 / (sigma_i^2 + (Z+lambda)/U)^2,
/// continuous and strictly decreasing in lambda. At Z + lambda = 0 the
/// rank-truncated pseudo-inverse power is returned.
double power_curve(const ChannelDecomposition& dec, double Z, double U, double lambda);

/// Ridge solution (H^H H + mu I)^{-1} H^H G for mu > 0; the (truncated)
/// pseudo-inverse solution for mu = 0, which covers both the
/// under-determined min-norm and the over-determined least-squares case.
CMat ridge_solution(const ChannelDecomposition& dec, double mu);

/// Finds lambda* with |power(lambda*) - P_max| <= tol * P_max, assuming
/// power(0) > P_max. The returned root is on the feasible side:
/// power(lambda*) in [P_max (1 - tol), P_max].
double bisect_lambda(const ChannelDecomposition& dec, double Z, double U, double P_max,
                     double tol_rel, double growth, double lambda_init, int max_iters);

/// KKT case analysis over (Z, rank, power) with bisection fallback.
SolverOutput solve_cell(const SolverInput& input);

}  // namespace wnv
