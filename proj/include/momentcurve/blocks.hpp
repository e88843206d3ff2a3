#pragma once

// The reordered moment matrix used by both cubic solvers.
//
// Rows and columns are listed as 1, X, ..., X^k, then Y X^i (i < k), then
// Y^2 X^i (i < k-1), then every remaining monomial (Y-degree >= 3) in
// degree-lex order.  A11 is the Hankel block of the line y = 0, A22 the block
// of the other columns spanning the column space, A33 the rest.

#include <vector>

#include "momentcurve/exactmath.hpp"
#include "momentcurve/moments.hpp"

namespace mc {

struct BlockDecomp {
  int k = 0;
  std::vector<std::size_t> order;  // degree-lex index of each reordered position
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  SymMat Mt;  // reordered moment matrix
  SymMat A11, A22, A33;
  Matrix<Rat> A12, A13, A23;
  SymMat A_min;  // A12 A22^+ A12^T

  std::vector<std::size_t> first_block() const;  // positions 0..k
};

// The blocks of the reordered matrix.  Throws InputError for k < 3.
BlockDecomp assemble_blocks(const MomentSequence& beta);

// P^T Mt P: the moment matrix in degree-lex order again.
SymMat reassemble(const BlockDecomp& b);

// F(A): the reordered matrix with A11 replaced by A.
template <class F>
Matrix<F> conic_part(const BlockDecomp& b, const Matrix<F>& A) {
  Matrix<F> R = b.Mt.template cast<F>();
  for (std::size_t i = 0; i < b.n1; ++i)
    for (std::size_t j = 0; j < b.n1; ++j) R(i, j) = A(i, j);
  return R;
}

// H(A) = A11 - A.
template <class F>
Matrix<F> line_part(const BlockDecomp& b, const Matrix<F>& A) {
  return b.A11.template cast<F>() - A;
}

// The moment sequence whose reordered moment matrix is F(A), for a Hankel A.
template <class F>
MomentSeq<F> conic_sequence(const BlockDecomp& b, const MomentSequence& beta, const Matrix<F>& A) {
  MomentSeq<F> s = beta.template cast<F>();
  const int k = b.k;
  for (int i = 0; i <= 2 * k; ++i) {
    const int r = std::max(0, i - k);
    s(i, 0) = A(static_cast<std::size_t>(r), static_cast<std::size_t>(i - r));
  }
  return s;
}

// The univariate sequence (v_0, ..., v_{2k}) of a Hankel matrix of size k+1.
template <class F>
std::vector<F> hankel_entries(const Matrix<F>& A) {
  const std::size_t k = A.rows() - 1;
  std::vector<F> v(2 * k + 1);
  for (std::size_t i = 0; i <= 2 * k; ++i) {
    const std::size_t r = i > k ? i - k : 0;
    v[i] = A(r, i - r);
  }
  return v;
}

template <class F>
bool is_hankel(const Matrix<F>& A) {
  for (std::size_t i = 0; i + 1 < A.rows(); ++i)
    for (std::size_t j = 1; j < A.cols(); ++j)
      if (!(A(i, j) == A(i + 1, j - 1))) return false;
  return true;
}

}  // namespace mc
