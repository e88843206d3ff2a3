#pragma once

// The truncated Hamburger moment problem on the real line, the
// one-missing-entry psd completion, and numeric atom recovery from Hankel
// data.  Everything except `extract_atoms_hankel` is exact.

#include <vector>

#include "momentcurve/exactmath.hpp"
#include "momentcurve/numeric.hpp"
#include "momentcurve/report.hpp"

namespace mc {

template <class F>
using HankelVec = std::vector<F>;

// A_v for v = (v_0, ..., v_{2k}); size k+1.
template <class F>
Matrix<F> hankel_matrix(const HankelVec<F>& v) {
  if (v.size() % 2 == 0) throw std::invalid_argument("Hankel vector must have odd length");
  const std::size_t n = v.size() / 2 + 1;
  Matrix<F> A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = v[i + j];
  return A;
}

// Leading (m+1) x (m+1) block A_v(m).
template <class F>
Matrix<F> hankel_leading(const HankelVec<F>& v, std::size_t m) {
  Matrix<F> A(m + 1, m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j <= m; ++j) A(i, j) = v[i + j];
  return A;
}

template <class F>
std::size_t rank_of_v(const HankelVec<F>& v);

template <class F>
SolveReport solve_hamburger(const HankelVec<F>& v);

template <class F>
struct PrgResult {
  bool prg = false;
  std::size_t r = 0;
  std::vector<F> phi;  // recursion coefficients phi_0..phi_{r-1}
};

template <class F>
PrgResult<F> prg_analysis(const HankelVec<F>& v);

template <class F>
bool prg_check(const HankelVec<F>& v) {
  return prg_analysis(v).prg;
}

// Lemma-style completion of
//   [ A1  a     b    ]
//   [ a^T alpha x    ]
//   [ b^T x     gamma]
// with the unknown entry already moved to the last two indices.
struct CompletionReport {
  QuadScalar x_minus, x_plus;
  std::size_t rank_at_boundary = 0;
  std::size_t rank_interior = 0;
  bool collapse = false;
};

CompletionReport completion_interval(const SymMat& A1, const Vec<Rat>& a, const Vec<Rat>& b, const Rat& alpha,
                                     const Rat& gamma);

// The full matrix A(x) of the completion problem.
template <class F>
Matrix<F> completion_matrix(const SymMat& A1, const Vec<Rat>& a, const Vec<Rat>& b, const Rat& alpha, const Rat& gamma,
                            const F& x) {
  const std::size_t m = A1.rows();
  Matrix<F> A(m + 2, m + 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) A(i, j) = F(A1(i, j));
    A(i, m) = A(m, i) = F(a[i]);
    A(i, m + 1) = A(m + 1, i) = F(b[i]);
  }
  A(m, m) = F(alpha);
  A(m + 1, m + 1) = F(gamma);
  A(m, m + 1) = A(m + 1, m) = x;
  return A;
}

struct Atom1D {
  Real x;
  Real w;
};

// Recovers a (rank v)-atomic representing measure; throws NumericFailure if
// the recovered measure misses v by more than rel_tol * (1 + |v_i|).
template <class F>
std::vector<Atom1D> extract_atoms_hankel(const HankelVec<F>& v, double rel_tol = 1e-9);

// Solves a dense square float128 system by partial pivoting; throws
// NumericFailure when singular to working precision.
std::vector<Real> solve_dense(std::vector<std::vector<Real>> A, std::vector<Real> b);

}  // namespace mc
