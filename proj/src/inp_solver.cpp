// SPDX-License-Identifier: Apache-2.0
#include "wnv/inp_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wnv {

const char* to_string(SolveCase c) {
  switch (c) {
    case SolveCase::RidgeInactive: return "ridge-inactive";
    case SolveCase::RidgeActiveBisection: return "ridge-active-bisection";
    case SolveCase::MinnormUnderdetermined: return "minnorm-underdetermined";
    case SolveCase::ExactOverdetermined: return "exact-overdetermined";
  }
  return "unknown";
}

ChannelDecomposition ChannelDecomposition::make(const CMat& H, const CMat& G) {
  ChannelDecomposition dec;
  dec.rows = static_cast<int>(H.rows());
  dec.cols = static_cast<int>(H.cols());
  Eigen::BDCSVD<CMat> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  dec.sigma = svd.singularValues();
  dec.U = svd.matrixU();
  dec.V = svd.matrixV();
  dec.A = dec.U.adjoint() * G;
  dec.row_norm2 = dec.A.rowwise().squaredNorm();
  const double cutoff = std::max(dec.rows, dec.cols) *
                        std::numeric_limits<double>::epsilon() *
                        (dec.sigma.size() > 0 ? dec.sigma(0) : 0.0);
  dec.rank = 0;
  for (int i = 0; i < dec.sigma.size(); ++i)
    if (dec.sigma(i) > cutoff) ++dec.rank;
  return dec;
}

double power_curve(const ChannelDecomposition& dec, double Z, double U, double lambda) {
  if (U <= 0.0) throw std::invalid_argument("power_curve: U must be > 0");
  const double mu = (Z + lambda) / U;
  double power = 0.0;
  if (mu <= 0.0) {
    for (int i = 0; i < dec.rank; ++i) {
      const double s2 = dec.sigma(i) * dec.sigma(i);
      power += dec.row_norm2(i) / s2;
    }
  } else {
    for (int i = 0; i < dec.sigma.size(); ++i) {
      const double s = dec.sigma(i);
      const double denom = s * s + mu;
      power += s * s * dec.row_norm2(i) / (denom * denom);
    }
  }
  return power;
}

CMat ridge_solution(const ChannelDecomposition& dec, double mu) {
  if (mu <= 0.0) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dec.sigma.size());
    for (int i = 0; i < dec.rank; ++i) w(i) = 1.0 / dec.sigma(i);
    return dec.V * (w.asDiagonal() * dec.A);
  }
  Eigen::VectorXd w(dec.sigma.size());
  for (int i = 0; i < dec.sigma.size(); ++i) {
    const double s = dec.sigma(i);
    w(i) = s / (s * s + mu);
  }
  return dec.V * (w.asDiagonal() * dec.A);
}

double bisect_lambda(const ChannelDecomposition& dec, double Z, double U, double P_max,
                     double tol_rel, double growth, double lambda_init, int max_iters) {
  if (power_curve(dec, Z, U, 0.0) <= P_max)
    throw std::invalid_argument("bisect_lambda: constraint not active at lambda = 0");
  if (growth <= 1.0) growth = 2.0;

  // power(mu) <= ||A||_F^2 / (4 mu), so mu = ||A||_F^2 / (4 P_max) is a
  // guaranteed upper bracket when no hint is supplied.
  double hi = lambda_init;
  if (hi <= 0.0) hi = std::max(U * dec.row_norm2.sum() / (4.0 * P_max) - Z, 1e-300);
  int guard = 0;
  while (power_curve(dec, Z, U, hi) > P_max) {
    hi *= growth;
    if (++guard > 2000)
      throw std::runtime_error("bisect_lambda: failed to bracket the power root");
  }

  double lo = 0.0;
  const double target_lo = P_max * (1.0 - tol_rel);
  for (int it = 0; it < max_iters; ++it) {
    if (power_curve(dec, Z, U, hi) >= target_lo) return hi;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in double precision
    if (power_curve(dec, Z, U, mid) > P_max)
      lo = mid;
    else
      hi = mid;
  }
  return hi;  // feasible side, best effort
}

namespace {

double kkt_residual_of(const CMat& H, const CMat& G, const CMat& V, double Z, double U,
                       double lambda) {
  const CMat HtG = H.adjoint() * G;
  const CMat grad = U * (H.adjoint() * (H * V) - HtG) + (Z + lambda) * V;
  return grad.norm() / std::max(1.0, HtG.norm());
}

}  // namespace

SolverOutput solve_cell(const SolverInput& input) {
  const CMat& H = input.H_hat;
  const CMat& G = input.G_hat;
  if (!H.allFinite() || !G.allFinite())
    throw std::invalid_argument("solve_cell: non-finite input");
  if (input.U <= 0.0) throw std::invalid_argument("solve_cell: U must be > 0");
  if (input.Z < 0.0) throw std::invalid_argument("solve_cell: Z must be >= 0");
  if (input.P_max <= 0.0) throw std::invalid_argument("solve_cell: P_max must be > 0");
  if (H.rows() != G.rows()) throw std::invalid_argument("solve_cell: H/G row mismatch");

  const int K = static_cast<int>(H.rows());
  const int N = static_cast<int>(H.cols());

  SolverOutput out;
  if (G.norm() == 0.0) {
    out.V_star = CMat::Zero(N, G.cols());
    out.lambda_star = 0.0;
    out.case_tag = input.Z > 0.0 ? SolveCase::RidgeInactive
                                 : (K < N ? SolveCase::MinnormUnderdetermined
                                          : SolveCase::ExactOverdetermined);
    out.achieved_power = 0.0;
    out.kkt_residual = 0.0;
    return out;
  }

  const ChannelDecomposition dec = ChannelDecomposition::make(H, G);
  const bool full_rank = dec.rank == std::min(K, N);

  if (input.Z > 0.0) {
    const double p0 = power_curve(dec, input.Z, input.U, 0.0);
    if (p0 <= input.P_max) {
      out.V_star = ridge_solution(dec, input.Z / input.U);
      out.lambda_star = 0.0;
      out.case_tag = SolveCase::RidgeInactive;
    } else {
      out.lambda_star = bisect_lambda(dec, input.Z, input.U, input.P_max,
                                      input.power_tol_rel, input.bracket_growth,
                                      input.lambda_bracket_init, input.max_bisect_iters);
      out.V_star = ridge_solution(dec, (input.Z + out.lambda_star) / input.U);
      out.case_tag = SolveCase::RidgeActiveBisection;
    }
  } else {
    // Z = 0: pseudo-inverse candidate; rank deficiency is flagged and the
    // truncated pinv is still the min-norm solution of the consistent
    // normal equations, so it stays valid when within the power budget.
    const double p0 = power_curve(dec, 0.0, input.U, 0.0);
    out.degenerate_rank = !full_rank;
    if (p0 <= input.P_max) {
      out.V_star = ridge_solution(dec, 0.0);
      out.lambda_star = 0.0;
      out.case_tag = K < N ? SolveCase::MinnormUnderdetermined
                           : SolveCase::ExactOverdetermined;
    } else {
      out.lambda_star = bisect_lambda(dec, 0.0, input.U, input.P_max,
                                      input.power_tol_rel, input.bracket_growth,
                                      input.lambda_bracket_init, input.max_bisect_iters);
      out.V_star = ridge_solution(dec, out.lambda_star / input.U);
      out.case_tag = SolveCase::RidgeActiveBisection;
    }
  }

  out.achieved_power = out.V_star.squaredNorm();
  out.kkt_residual = kkt_residual_of(H, G, out.V_star, input.Z, input.U, out.lambda_star);
  return out;
}

}  // namespace wnv
