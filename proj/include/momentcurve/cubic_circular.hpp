#pragma once

// The moment problem on the cubic y (a y + x^2 + y^2) = 0, a != 0: the line
// y = 0 together with the circle through the origin with centre (0, -a/2).

#include <string>
#include <vector>

#include "momentcurve/blocks.hpp"
#include "momentcurve/report.hpp"

namespace mc {

struct CircularWork {
  Rat a;
  BlockDecomp blocks;
  SymMat A_min;
  Rat eta;        // A_min(0,2) - A_min(1,1)
  SymMat A_hat;   // A_min + eta E_{11}: Hankel
  SymMat H_hat;   // A11 - A_hat
  SymMat H1;      // H_hat on {1} and X^2..X^k
  SymMat H2;      // H_hat on X..X^k
  SymMat H22;     // H_hat on X^2..X^k
  Vec<Rat> h1, h2;
  Rat u0;         // H_hat(0,1) - h1^T H22^+ h2
  Rat t0;         // H1 / H22
  Rat c;          // H2 / H22
};

CircularWork compute_circular_work(const MomentSequence& beta, const Rat& a);

// A_hat + t E_00 + u (E_01 + E_10).
template <class F>
Matrix<F> circular_G(const CircularWork& w, const F& t, const F& u) {
  Matrix<F> G = w.A_hat.template cast<F>();
  G(0, 0) += t;
  G(0, 1) += u;
  G(1, 0) += u;
  return G;
}

struct BoundaryPoint {
  QuadScalar t, u;
  std::string branch;  // signs of u and of u - u0
};

// Common boundary points of {F(G(t,u)) psd} and {H(G(t,u)) psd}: the
// solutions of u^2 = eta t and (u - u0)^2 = c (t0 - t) with 0 <= t <= t0.
// Requires eta > 0.
std::vector<BoundaryPoint> boundary_set(const CircularWork& w);

SolveReport solve_circular(const MomentSequence& beta, const Rat& a);

}  // namespace mc
