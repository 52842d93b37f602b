// SPDX-License-Identifier: Apache-2.0
//
// Independent first-order oracle for the constrained regularized least
// squares problem: accelerated projected gradient with restarts. Shares
// no code with the production solver (no SVD, no KKT case analysis).
#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace oracle {

using CMat = Eigen::MatrixXcd;

inline double objective(const CMat& H, const CMat& G, const CMat& V, double Z, double U) {
  return U * (H * V - G).squaredNorm() + Z * V.squaredNorm();
}

// Largest eigenvalue of H^H H by power iteration.
inline double top_gram_eigenvalue(const CMat& H) {
  const int n = static_cast<int>(H.cols());
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n);
  v.normalize();
  double eig = 0.0;
  for (int it = 0; it < 150; ++it) {
    Eigen::VectorXcd w = H.adjoint() * (H * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    eig = norm;
    v = w / norm;
  }
  return eig;
}

// Minimizes U||HV-G||^2 + Z||V||^2 subject to ||V||_F^2 <= P_max.
inline CMat solve_pgd(const CMat& H, const CMat& G, double Z, double U, double P_max,
                      int max_iters = 200000) {
  const double L = 2.0 * (U * top_gram_eigenvalue(H) + Z) + 1e-30;
  const double step = 1.0 / L;
  const double radius = std::sqrt(P_max);

  CMat V = CMat::Zero(H.cols(), G.cols());
  CMat Y = V;
  CMat V_prev = V;
  double t_acc = 1.0;
  double best = objective(H, G, V, Z, U);
  int stall = 0;
  for (int it = 0; it < max_iters; ++it) {
    const CMat grad = 2.0 * U * (H.adjoint() * (H * Y - G)) + 2.0 * Z * Y;
    CMat V_next = Y - step * grad;
    const double norm = V_next.norm();
    if (norm > radius) V_next *= radius / norm;

    const double f_next = objective(H, G, V_next, Z, U);
    if (f_next > objective(H, G, V, Z, U)) {
      // restart momentum
      t_acc = 1.0;
      Y = V;
      continue;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
    Y = V_next + ((t_acc - 1.0) / t_next) * (V_next - V);
    V_prev = V;
    V = V_next;
    t_acc = t_next;

    if (best - f_next <= 1e-15 * std::max(1.0, std::abs(best))) {
      if (++stall > 200) break;
    } else {
      stall = 0;
    }
    best = std::min(best, f_next);
  }
  return V;
}

}  // namespace oracle
