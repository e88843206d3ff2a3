#include "momentcurve/univariate.hpp"

#include <sstream>

#include "momentcurve/upoly.hpp"

namespace mc {

namespace {

template <class F>
bool all_zero(const HankelVec<F>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <class F>
std::size_t rank_of_columns(const Matrix<F>& A, std::size_t count) {
  if (count == 0) return 0;
  std::vector<std::size_t> rows(A.rows()), cols(count);
  for (std::size_t i = 0; i < A.rows(); ++i) rows[i] = i;
  for (std::size_t j = 0; j < count; ++j) cols[j] = j;
  return rank(A.sub(rows, cols));
}

}  // namespace

template <class F>
std::size_t rank_of_v(const HankelVec<F>& v) {
  Matrix<F> A = hankel_matrix(v);
  const std::size_t n = A.rows();
  if (rank(A) == n) return n;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = rank_of_columns(A, i + 1);
    if (cur == prev) return i;
    prev = cur;
  }
  return n;  // unreachable for singular A
}

template <class F>
SolveReport solve_hamburger(const HankelVec<F>& v) {
  SolveReport rep;
  Matrix<F> A = hankel_matrix(v);
  const std::size_t k = A.rows() - 1;
  auto pr = psd_rank(A);
  rep.note("rank_A_v", pr.rank);
  if (!pr.is_psd) {
    rep.clause = "A_v not psd";
    return rep;
  }
  if (all_zero(v)) {
    rep.exists = true;
    rep.clause = "zero sequence";
    rep.minimal_atoms = 0;
    rep.atom_upper_bound = 0;
    return rep;
  }
  bool ok = false;
  if (k == 0) {
    ok = true;
    rep.clause = "A_v(k-1) pd";
  } else {
    Matrix<F> L = hankel_leading(v, k - 1);
    auto lr = psd_rank(L);
    rep.note("rank_A_v(k-1)", lr.rank);
    if (lr.rank == L.rows()) {
      ok = true;
      rep.clause = "A_v(k-1) pd";
    } else if (lr.rank == pr.rank) {
      ok = true;
      rep.clause = "rank A_v(k-1) = rank A_v";
    } else {
      rep.clause = "rank A_v(k-1) < rank A_v with A_v(k-1) singular";
    }
  }
  if (ok) {
    rep.exists = true;
    rep.minimal_atoms = pr.rank;
    rep.atom_upper_bound = pr.rank;
  }
  return rep;
}

template <class F>
PrgResult<F> prg_analysis(const HankelVec<F>& v) {
  PrgResult<F> res;
  const std::size_t k = v.size() / 2;
  res.r = rank_of_v(v);
  if (res.r == 0) {
    res.prg = all_zero(v);
    return res;
  }
  Matrix<F> L = hankel_leading(v, res.r - 1);
  if (!is_pd(L)) return res;
  if (res.r == k + 1) {
    res.prg = true;
    return res;
  }
  Vec<F> rhs(res.r);
  for (std::size_t i = 0; i < res.r; ++i) rhs[i] = v[res.r + i];
  res.phi = mat_vec(inverse(L), rhs);
  for (std::size_t j = res.r; j <= 2 * k; ++j) {
    F s(0);
    for (std::size_t i = 0; i < res.r; ++i) s += res.phi[i] * v[j - res.r + i];
    if (!(s == v[j])) return res;
  }
  res.prg = true;
  return res;
}

CompletionReport completion_interval(const SymMat& A1, const Vec<Rat>& a, const Vec<Rat>& b, const Rat& alpha,
                                     const Rat& gamma) {
  const std::size_t m = A1.rows();
  if (a.size() != m || b.size() != m) throw InputError("completion: border vectors have the wrong length");
  SymMat A2(m + 1, m + 1), A3(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) A2(i, j) = A3(i, j) = A1(i, j);
    A2(i, m) = A2(m, i) = a[i];
    A3(i, m) = A3(m, i) = b[i];
  }
  A2(m, m) = alpha;
  A3(m, m) = gamma;
  auto p2 = psd_rank(A2), p3 = psd_rank(A3);
  if (!p2.is_psd || !p3.is_psd) throw InputError("completion: specified principal blocks are not psd");
  std::vector<std::size_t> head(m);
  for (std::size_t i = 0; i < m; ++i) head[i] = i;
  Rat s2 = schur(A2, head)(0, 0);
  Rat s3 = schur(A3, head)(0, 0);
  Rat centre = 0;
  if (m > 0) {
    Vec<Rat> Apa = mat_vec(pinv(A1), a);
    for (std::size_t i = 0; i < m; ++i) centre += b[i] * Apa[i];
  }
  QuadScalar root = QuadScalar::sqrt(s2 * s3);
  CompletionReport rep;
  rep.x_minus = QuadScalar(centre) - root;
  rep.x_plus = QuadScalar(centre) + root;
  rep.rank_at_boundary = std::max(p2.rank, p3.rank);
  rep.rank_interior = rep.rank_at_boundary + 1;
  rep.collapse = sgn(s2) == 0 || sgn(s3) == 0;
  return rep;
}

std::vector<Real> solve_dense(std::vector<std::vector<Real>> A, std::vector<Real> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (abs(A[i][c]) > abs(A[p][c])) p = i;
    if (A[p][c] == 0) throw NumericFailure("singular linear system in weight recovery");
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      Real f = A[i][c] / A[c][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
      b[i] -= f * b[c];
    }
  }
  std::vector<Real> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

// Monic orthogonal polynomial of degree m for the functional v (needs the
// leading block A_v(m-1) to be invertible).
template <class F>
std::vector<F> monic_orthogonal(const HankelVec<F>& v, std::size_t m) {
  std::vector<F> c(m + 1, F(0));
  c[m] = F(1);
  if (m == 0) return c;
  Vec<F> rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = -v[i + m];
  const Vec<F> sol = mat_vec(inverse(hankel_leading(v, m - 1)), rhs);
  for (std::size_t i = 0; i < m; ++i) c[i] = sol[i];
  return c;
}

template <class F>
F norm_squared(const HankelVec<F>& v, const std::vector<F>& p) {
  const std::size_t m = p.size() - 1;
  F s(0);
  for (std::size_t i = 0; i <= m; ++i) s += p[i] * v[i + m];
  return s;
}

// Q = (t - d) P_k - b_k P_{k-1} with b_k = |P_k|^2 / |P_{k-1}|^2.  The zeros
// of Q are the eigenvalues of the Jacobi matrix of v extended by the
// diagonal entry d; taking d as the mean of the zeros of P_k (its trace over
// k) keeps every zero inside the spread of the data.
template <class F>
std::vector<F> jacobi_extension_generator(const HankelVec<F>& v, std::size_t k) {
  if (k == 0) return {F(0), F(1)};
  const std::vector<F> pk = monic_orthogonal(v, k), pk1 = monic_orthogonal(v, k - 1);
  const F bk = norm_squared(v, pk) / norm_squared(v, pk1);
  const F d = -pk[k - 1] / F(static_cast<long>(k));
  std::vector<F> q(k + 2, F(0));
  for (std::size_t i = 0; i <= k; ++i) {
    q[i + 1] += pk[i];
    q[i] -= d * pk[i];
  }
  for (std::size_t i = 0; i < k; ++i) q[i] -= bk * pk1[i];
  return q;
}

template <class F>
std::vector<Atom1D> extract_atoms_hankel(const HankelVec<F>& v_in, double rel_tol) {
  if (all_zero(v_in)) return {};
  if (!solve_hamburger(v_in).exists) throw InputError("Hankel vector has no representing measure");
  const HankelVec<F>& v = v_in;
  const std::size_t k = v.size() / 2;
  const std::size_t r = rank_of_v(v);
  std::vector<F> gen;
  if (r == k + 1) {
    // Positive definite: every choice of v_{2k+1} gives a (k+1)-atomic
    // measure; v_{2k+1} = 0 can throw one atom far out with a tiny weight.
    gen = jacobi_extension_generator(v, k);
  } else {
    auto pa = prg_analysis(v);
    if (!pa.prg) throw NumericFailure("Hankel vector solvable but not recursively generated");
    gen.assign(r + 1, F(0));
    for (std::size_t i = 0; i < r; ++i) gen[i] = -pa.phi[i];
    gen[r] = F(1);
  }
  std::vector<Real> roots = real_roots(UPoly<F>(gen));
  if (roots.size() != r) {
    std::ostringstream os;
    os << "generating polynomial has " << roots.size() << " real roots, expected " << r;
    throw NumericFailure(os.str());
  }
  std::vector<std::vector<Real>> V(r, std::vector<Real>(r));
  std::vector<Real> rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    rhs[i] = to_real(v[i]);
    for (std::size_t m = 0; m < r; ++m) V[i][m] = pow(roots[m], static_cast<int>(i));
  }
  std::vector<Real> w = solve_dense(V, rhs);
  std::vector<Atom1D> atoms;
  for (std::size_t m = 0; m < r; ++m) {
    if (!(w[m] > 0)) {
      std::ostringstream os;
      os << "non-positive weight " << static_cast<double>(w[m]) << " at atom " << static_cast<double>(roots[m]);
      throw NumericFailure(os.str());
    }
    atoms.push_back({roots[m], w[m]});
  }
  Real worst = 0;
  for (std::size_t i = 0; i < v_in.size(); ++i) {
    Real s = 0;
    for (const auto& at : atoms) s += at.w * pow(at.x, static_cast<int>(i));
    Real target = to_real(v_in[i]);
    Real err = abs(s - target) / (1 + abs(target));
    if (err > worst) worst = err;
  }
  if (worst > Real(rel_tol)) {
    std::ostringstream os;
    os << "Hankel atom recovery residual " << static_cast<double>(worst) << " exceeds " << rel_tol;
    throw NumericFailure(os.str());
  }
  return atoms;
}

template std::size_t rank_of_v(const HankelVec<Rat>&);
template std::size_t rank_of_v(const HankelVec<QuadScalar>&);
template SolveReport solve_hamburger(const HankelVec<Rat>&);
template SolveReport solve_hamburger(const HankelVec<QuadScalar>&);
template PrgResult<Rat> prg_analysis(const HankelVec<Rat>&);
template PrgResult<QuadScalar> prg_analysis(const HankelVec<QuadScalar>&);
template std::vector<Atom1D> extract_atoms_hankel(const HankelVec<Rat>&, double);
template std::vector<Atom1D> extract_atoms_hankel(const HankelVec<QuadScalar>&, double);

}  // namespace mc
