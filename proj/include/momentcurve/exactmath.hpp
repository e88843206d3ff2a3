#pragma once

// Exact linear algebra over the rationals and over a single real quadratic
// extension Q(sqrt D).  Everything here is tolerance free.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mc {

using Rat = mpq_class;
using Int = mpz_class;

// Raised when two quadratic scalars live in different fields Q(sqrt D1) and
// Q(sqrt D2) with D1/D2 not a rational square.
class FieldMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Rat parse_rat(const std::string& s);
std::string to_string(const Rat& x);  // canonical "num/den"
inline int sign_of(const Rat& x) { return sgn(x); }
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
bool is_rational_square(const Rat& x, Rat* root = nullptr);
long double to_long_double(const Rat& x);

// a + b*sqrt(D).  When b == 0 the value is rational and D is stored as 0.
// Otherwise D is a positive square-free integer (as far as cheap trial
// division can tell; the field test below stays exact regardless).
class QuadScalar {
 public:
  QuadScalar() : a_(0), b_(0), d_(0) {}
  QuadScalar(int v) : a_(v), b_(0), d_(0) {}  // NOLINT: implicit by design
  QuadScalar(long v) : a_(v), b_(0), d_(0) {}  // NOLINT
  QuadScalar(const Rat& a) : a_(a), b_(0), d_(0) {}  // NOLINT
  QuadScalar(const Rat& a, const Rat& b, const Rat& D);

  static QuadScalar sqrt(const Rat& x);

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Rat& D() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  QuadScalar operator-() const;
  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);
  QuadScalar conjugate() const;
  Rat norm() const;  // a^2 - b^2 D

  long double to_long_double() const;
  std::string str() const;

  // Rewrites o over this field; throws FieldMismatch if impossible.
  QuadScalar expressed_over(const Rat& D) const;

 private:
  Rat a_, b_, d_;
  void normalize();
};

int quad_sign(const QuadScalar& x);
inline int sign_of(const QuadScalar& x) { return quad_sign(x); }
inline bool is_zero(const QuadScalar& x) { return x.is_rational() && sgn(x.a()) == 0; }

inline QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
inline QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
inline QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
inline QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }
bool operator==(const QuadScalar& x, const QuadScalar& y);
inline bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }
inline bool operator<(const QuadScalar& x, const QuadScalar& y) { return quad_sign(x - y) < 0; }
inline bool operator>(const QuadScalar& x, const QuadScalar& y) { return y < x; }
inline bool operator<=(const QuadScalar& x, const QuadScalar& y) { return !(y < x); }
inline bool operator>=(const QuadScalar& x, const QuadScalar& y) { return !(x < y); }
std::ostream& operator<<(std::ostream& os, const QuadScalar& x);

// The common radicand of a set of scalars (0 if all rational).  Throws
// FieldMismatch if two of them cannot be placed in one field.
Rat common_radicand(const std::vector<QuadScalar>& xs);

// ---------------------------------------------------------------------------
// Dense matrices.

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), d_(r * c, F(0)) {}
  Matrix(std::initializer_list<std::initializer_list<F>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    d_.reserve(r_ * c_);
    for (const auto& row : rows) {
      if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& v : row) d_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  F& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix sub(const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) const {
    Matrix s(ri.size(), ci.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
      for (std::size_t j = 0; j < ci.size(); ++j) s(i, j) = (*this)(ri[i], ci[j]);
    return s;
  }
  Matrix principal(const std::vector<std::size_t>& idx) const { return sub(idx, idx); }

  std::vector<F> column(std::size_t j) const {
    std::vector<F> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = i + 1; j < c_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  bool is_zero_matrix() const {
    for (const auto& v : d_)
      if (!is_zero(v)) return false;
    return true;
  }

  template <class G>
  Matrix<G> cast() const {
    Matrix<G> m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = G((*this)(i, j));
    return m;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) return false;
    for (std::size_t i = 0; i < x.d_.size(); ++i)
      if (!(x.d_[i] == y.d_[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    Matrix s = x;
    for (std::size_t i = 0; i < s.d_.size(); ++i) s.d_[i] += y.d_[i];
    return s;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    Matrix s = x;
    for (std::size_t i = 0; i < s.d_.size(); ++i) s.d_[i] -= y.d_[i];
    return s;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix p(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t l = 0; l < x.c_; ++l) {
        const F& a = x(i, l);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < y.c_; ++j) p(i, j) += a * y(l, j);
      }
    return p;
  }
  friend Matrix operator*(const F& s, const Matrix& x) {
    Matrix p = x;
    for (auto& v : p.d_) v *= s;
    return p;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<F> d_;

  static void check_same(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix sum: shape mismatch");
  }
};

using SymMat = Matrix<Rat>;
using QuadMat = Matrix<QuadScalar>;
template <class F>
using Vec = std::vector<F>;

template <class F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  return os << "]";
}

// Unit matrix E_{i,j} of size n (0-based indices).
template <class F>
Matrix<F> unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  Matrix<F> e(n, n);
  e(i, j) = F(1);
  return e;
}

template <class F>
F quad_form(const Matrix<F>& A, const Vec<F>& v) {
  F s(0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (is_zero(v[i])) continue;
    F row(0);
    for (std::size_t j = 0; j < A.cols(); ++j) row += A(i, j) * v[j];
    s += v[i] * row;
  }
  return s;
}

template <class F>
Vec<F> mat_vec(const Matrix<F>& A, const Vec<F>& v) {
  Vec<F> r(A.rows(), F(0));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) r[i] += A(i, j) * v[j];
  return r;
}

// ---------------------------------------------------------------------------
// Rank, echelon form, inverse, determinant.

template <class F>
struct Echelon {
  Matrix<F> R;                      // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

template <class F>
Echelon<F> rref(Matrix<F> A) {
  Echelon<F> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < A.cols() && row < A.rows(); ++col) {
    std::size_t p = row;
    while (p < A.rows() && is_zero(A(p, col))) ++p;
    if (p == A.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(p, j), A(row, j));
    F inv = F(1) / A(row, col);
    for (std::size_t j = col; j < A.cols(); ++j) A(row, j) *= inv;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == row || is_zero(A(i, col))) continue;
      F f = A(i, col);
      for (std::size_t j = col; j < A.cols(); ++j) A(i, j) -= f * A(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.R = std::move(A);
  return out;
}

template <class F>
std::size_t rank(const Matrix<F>& A) {
  Matrix<F> M = A;
  std::size_t r = 0;
  for (std::size_t col = 0; col < M.cols() && r < M.rows(); ++col) {
    std::size_t p = r;
    while (p < M.rows() && is_zero(M(p, col))) ++p;
    if (p == M.rows()) continue;
    if (p != r)
      for (std::size_t j = col; j < M.cols(); ++j) std::swap(M(p, j), M(r, j));
    for (std::size_t i = r + 1; i < M.rows(); ++i) {
      if (is_zero(M(i, col))) continue;
      F f = M(i, col) / M(r, col);
      for (std::size_t j = col; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
    }
    ++r;
  }
  return r;
}

template <class F>
F det(Matrix<F> A) {
  if (!A.square()) throw std::invalid_argument("det: matrix not square");
  const std::size_t n = A.rows();
  F d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(A(p, c))) ++p;
    if (p == n) return F(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(p, j), A(c, j));
      d = -d;
    }
    d *= A(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(A(i, c))) continue;
      F f = A(i, c) / A(c, c);
      for (std::size_t j = c; j < n; ++j) A(i, j) -= f * A(c, j);
    }
  }
  return d;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& A) {
  if (!A.square()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = A.rows();
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = F(1);
  }
  Echelon<F> e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
  return inv;
}

// Moore-Penrose pseudoinverse via a rank factorization A = B C:
// A+ = C^T (C C^T)^{-1} (B^T B)^{-1} B^T.
template <class F>
Matrix<F> pinv(const Matrix<F>& A) {
  Echelon<F> e = rref(A);
  const std::size_t r = e.pivots.size();
  if (r == 0) return Matrix<F>(A.cols(), A.rows());
  std::vector<std::size_t> all_rows(A.rows()), first_r(r), all_cols(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) all_rows[i] = i;
  for (std::size_t i = 0; i < r; ++i) first_r[i] = i;
  for (std::size_t j = 0; j < A.cols(); ++j) all_cols[j] = j;
  Matrix<F> B = A.sub(all_rows, e.pivots);
  Matrix<F> C = e.R.sub(first_r, all_cols);
  Matrix<F> Ct = C.transpose(), Bt = B.transpose();
  return Ct * inverse(C * Ct) * inverse(Bt * B) * Bt;
}

inline std::vector<std::size_t> complement_indices(std::size_t n, const std::vector<std::size_t>& block) {
  std::vector<bool> in(n, false);
  for (auto i : block) in.at(i) = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!in[i]) rest.push_back(i);
  return rest;
}

// Generalized Schur complement M/A = D - C A+ B of the principal block A
// indexed by `block`; the result is indexed by the remaining indices in
// increasing order.
template <class F>
Matrix<F> schur(const Matrix<F>& M, const std::vector<std::size_t>& block) {
  auto rest = complement_indices(M.rows(), block);
  Matrix<F> A = M.principal(block);
  Matrix<F> B = M.sub(block, rest);
  Matrix<F> C = M.sub(rest, block);
  Matrix<F> D = M.principal(rest);
  if (block.empty()) return D;
  return D - C * pinv(A) * B;
}

// ---------------------------------------------------------------------------
// PSD test by symmetric pivoting.

template <class F>
struct PsdReport {
  bool is_psd = false;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot order used (psd case)
  Vec<F> witness;                    // v with v^T A v < 0 (non-psd case)
};

template <class F>
PsdReport<F> psd_rank(const Matrix<F>& A) {
  if (!A.is_symmetric()) throw std::invalid_argument("psd_rank: matrix not symmetric");
  const std::size_t n = A.rows();
  Matrix<F> S = A;
  std::vector<bool> done(n, false);
  struct Step {
    std::size_t p;
    Vec<F> mult;  // mult[j] = S(p,j)/S(p,p) at pivot time, for active j
  };
  std::vector<Step> steps;
  PsdReport<F> rep;

  auto lift = [&](Vec<F> v) {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      F s(0);
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(it->mult[j])) s += it->mult[j] * v[j];
      v[it->p] = -s;
    }
    return v;
  };

  for (;;) {
    std::optional<std::size_t> pos, neg;
    for (std::size_t i = 0; i < n && !pos; ++i) {
      if (done[i]) continue;
      int s = sign_of(S(i, i));
      if (s > 0) pos = i;
      else if (s < 0 && !neg) neg = i;
    }
    if (neg) {
      Vec<F> w(n, F(0));
      w[*neg] = F(1);
      rep.is_psd = false;
      rep.witness = lift(w);
      rep.rank = rank(A);
      return rep;
    }
    if (!pos) {
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (done[j] || is_zero(S(i, j))) continue;
          Vec<F> w(n, F(0));
          w[i] = F(1);
          w[j] = sign_of(S(i, j)) > 0 ? F(-1) : F(1);
          rep.is_psd = false;
          rep.witness = lift(w);
          rep.rank = rank(A);
          return rep;
        }
      }
      rep.is_psd = true;
      rep.rank = steps.size();
      return rep;
    }
    const std::size_t p = *pos;
    Step st{p, Vec<F>(n, F(0))};
    F inv = F(1) / S(p, p);
    for (std::size_t j = 0; j < n; ++j)
      if (!done[j] && j != p) st.mult[j] = S(p, j) * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == p || is_zero(st.mult[i])) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || j == p) continue;
        S(i, j) -= st.mult[i] * S(p, j);
      }
    }
    done[p] = true;
    rep.pivots.push_back(p);
    steps.push_back(std::move(st));
  }
}

template <class F>
bool is_psd(const Matrix<F>& A) {
  return psd_rank(A).is_psd;
}

template <class F>
bool is_pd(const Matrix<F>& A) {
  auto r = psd_rank(A);
  return r.is_psd && r.rank == A.rows();
}

// Re-evaluates a PsdReport: for non-psd verdicts the witness must give a
// strictly negative quadratic form.
template <class F>
bool witness_confirms(const Matrix<F>& A, const PsdReport<F>& r) {
  if (r.is_psd) return r.rank == rank(A);
  return r.witness.size() == A.rows() && sign_of(quad_form(A, r.witness)) < 0;
}

}  // namespace mc
