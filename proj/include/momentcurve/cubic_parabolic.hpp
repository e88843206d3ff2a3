#pragma once

// The moment problem on the cubic y (x - y^2) = 0: the line y = 0 together
// with the parabola x = y^2.

#include "momentcurve/blocks.hpp"
#include "momentcurve/report.hpp"

namespace mc {

struct ParabolicWork {
  BlockDecomp blocks;
  SymMat A_min;
  Rat eta;        // A_min(1,k-1) - A_min(0,k)
  SymMat A_hat;   // A_min with both corners moved by eta
  SymMat H_hat;   // A11 - A_hat
  SymMat H1;      // H_hat on 1..X^{k-1}
  SymMat H2;      // H_hat on X..X^k
  SymMat H22;     // H_hat on X..X^{k-1}
  Vec<Rat> h12, h23;
  Rat k11, k12, k22;  // H_hat / H22 on the corners {1, X^k}
  Rat t1, u1;         // H1 / H22 and H2 / H22
  SymMat F22;         // F(A_hat) on Y, X, XY, ..., X^{k-1}, X^{k-1} Y
};

ParabolicWork compute_parabolic_work(const MomentSequence& beta);

// A_hat + t E_00 + u E_kk.
template <class F>
Matrix<F> parabolic_G(const ParabolicWork& w, const F& t, const F& u) {
  Matrix<F> G = w.A_hat.template cast<F>();
  const std::size_t k = G.rows() - 1;
  G(0, 0) += t;
  G(k, k) += u;
  return G;
}

struct RegionReport {
  bool in_R1 = false;  // t >= 0, u >= 0, t u >= eta^2
  bool in_R2 = false;  // (k11 - t)(k22 - u) >= k12^2, t <= k11, u <= k22
  std::size_t rank_F = 0, rank_H = 0;
};

RegionReport region_membership(const ParabolicWork& w, const QuadScalar& t, const QuadScalar& u);

SolveReport solve_parabolic_cubic(const MomentSequence& beta);

}  // namespace mc
