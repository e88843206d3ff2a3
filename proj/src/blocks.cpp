#include "momentcurve/blocks.hpp"

#include <numeric>

#include "momentcurve/report.hpp"

namespace mc {

std::vector<std::size_t> BlockDecomp::first_block() const {
  std::vector<std::size_t> v(n1);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

BlockDecomp assemble_blocks(const MomentSequence& beta) {
  const int k = beta.k();
  if (k < 3) throw InputError("the cubic solvers need k >= 3");
  BlockDecomp b;
  b.k = k;
  for (int i = 0; i <= k; ++i) b.order.push_back(deglex_index(i, 0));
  for (int j = 1; j <= 2; ++j)
    for (int i = 0; i + j <= k; ++i) b.order.push_back(deglex_index(i, j));
  MonomialIndex idx(k);
  for (std::size_t n = 0; n < idx.size(); ++n)
    if (idx[n].j >= 3) b.order.push_back(n);
  b.n1 = static_cast<std::size_t>(k) + 1;
  b.n2 = static_cast<std::size_t>(2 * k - 1);
  b.n3 = b.order.size() - b.n1 - b.n2;

  const SymMat M = moment_matrix(beta);
  b.Mt = M.principal(b.order);
  std::vector<std::size_t> p1(b.n1), p2(b.n2), p3(b.n3);
  std::iota(p1.begin(), p1.end(), std::size_t{0});
  std::iota(p2.begin(), p2.end(), b.n1);
  std::iota(p3.begin(), p3.end(), b.n1 + b.n2);
  b.A11 = b.Mt.principal(p1);
  b.A22 = b.Mt.principal(p2);
  b.A33 = b.Mt.principal(p3);
  b.A12 = b.Mt.sub(p1, p2);
  b.A13 = b.Mt.sub(p1, p3);
  b.A23 = b.Mt.sub(p2, p3);
  b.A_min = b.A12 * pinv(b.A22) * b.A12.transpose();
  return b;
}

SymMat reassemble(const BlockDecomp& b) {
  const std::size_t n = b.order.size();
  SymMat M(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) M(b.order[r], b.order[c]) = b.Mt(r, c);
  return M;
}

}  // namespace mc
