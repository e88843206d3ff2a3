#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "momentcurve/exactmath.hpp"

namespace mc {

// Position of X^i Y^j in degree-lex order 1, X, Y, X^2, XY, Y^2, ...
inline std::size_t deglex_index(int i, int j) {
  const std::size_t d = static_cast<std::size_t>(i + j);
  return d * (d + 1) / 2 + static_cast<std::size_t>(j);
}

inline std::size_t monomial_count(int degree) {
  const std::size_t d = static_cast<std::size_t>(degree);
  return (d + 1) * (d + 2) / 2;
}

struct Monomial {
  int i = 0, j = 0;  // X^i Y^j
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.i == b.i && a.j == b.j; }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return a.i + a.j != b.i + b.j ? a.i + a.j < b.i + b.j : a.j < b.j;
  }
};

std::string monomial_name(const Monomial& m);

class MonomialIndex {
 public:
  explicit MonomialIndex(int degree);
  int degree() const { return degree_; }
  std::size_t size() const { return list_.size(); }
  const Monomial& operator[](std::size_t n) const { return list_[n]; }
  std::size_t index_of(int i, int j) const;
  const std::vector<Monomial>& list() const { return list_; }

 private:
  int degree_;
  std::vector<Monomial> list_;
};

// Bivariate polynomial with rational coefficients; zero coefficients are
// never stored.
class Poly2 {
 public:
  using Terms = std::map<std::pair<int, int>, Rat>;

  Poly2() = default;
  explicit Poly2(const Rat& c);
  static Poly2 monomial(int i, int j, const Rat& c = Rat(1));
  static Poly2 x() { return monomial(1, 0); }
  static Poly2 y() { return monomial(0, 1); }
  // Parses expressions such as "y*(x - y^2)" or "-2y^2 + x^2 y + y^3".
  static Poly2 parse(const std::string& text);

  const Terms& terms() const { return terms_; }
  Rat coeff(int i, int j) const;
  void set(int i, int j, const Rat& c);
  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(const Rat& s);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(Poly2 a, const Rat& s) { return a *= s; }
  friend Poly2 operator*(const Rat& s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }
  Poly2 operator-() const { return *this * Rat(-1); }
  Poly2 pow(int e) const;

  Rat evaluate(const Rat& x, const Rat& y) const;
  long double evaluate(long double x, long double y) const;
  std::string str() const;

 private:
  Terms terms_;
};

// beta_{i,j} for all i + j <= 2k.
template <class F>
class MomentSeq {
 public:
  MomentSeq() = default;
  explicit MomentSeq(int k) : k_(k), v_(monomial_count(2 * k), F(0)) {
    if (k < 1) throw std::invalid_argument("moment sequence needs k >= 1");
  }

  int k() const { return k_; }
  int degree() const { return 2 * k_; }
  F& operator()(int i, int j) { return v_.at(checked(i, j)); }
  const F& operator()(int i, int j) const { return v_.at(checked(i, j)); }
  const std::vector<F>& raw() const { return v_; }

  template <class G>
  MomentSeq<G> cast() const {
    MomentSeq<G> r(k_);
    for (int d = 0; d <= 2 * k_; ++d)
      for (int j = 0; j <= d; ++j) r(d - j, j) = G((*this)(d - j, j));
    return r;
  }

  friend bool operator==(const MomentSeq& a, const MomentSeq& b) {
    if (a.k_ != b.k_) return false;
    for (std::size_t n = 0; n < a.v_.size(); ++n)
      if (!(a.v_[n] == b.v_[n])) return false;
    return true;
  }

  MomentSeq& operator+=(const MomentSeq& o) {
    if (o.k_ != k_) throw std::invalid_argument("moment sum: degree mismatch");
    for (std::size_t n = 0; n < v_.size(); ++n) v_[n] += o.v_[n];
    return *this;
  }

 private:
  int k_ = 0;
  std::vector<F> v_;

  std::size_t checked(int i, int j) const {
    if (i < 0 || j < 0 || i + j > 2 * k_) throw std::out_of_range("moment index out of range");
    return deglex_index(i, j);
  }
};

using MomentSequence = MomentSeq<Rat>;

template <class F>
Matrix<F> moment_matrix(const MomentSeq<F>& beta) {
  MonomialIndex idx(beta.k());
  Matrix<F> M(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = r; c < idx.size(); ++c) {
      M(r, c) = beta(idx[r].i + idx[c].i, idx[r].j + idx[c].j);
      M(c, r) = M(r, c);
    }
  return M;
}

template <class F>
F riesz(const MomentSeq<F>& beta, const Poly2& q) {
  if (q.degree() > beta.degree()) throw std::invalid_argument("riesz: polynomial degree exceeds 2k");
  F s(0);
  for (const auto& [e, c] : q.terms()) s += F(c) * beta(e.first, e.second);
  return s;
}

// The vector q(X,Y) as a combination of columns of M (deg q <= k).
template <class F>
Vec<F> column_combination(const Matrix<F>& M, const Poly2& q) {
  Vec<F> v(M.rows(), F(0));
  for (const auto& [e, c] : q.terms()) {
    std::size_t col = deglex_index(e.first, e.second);
    if (col >= M.cols()) throw std::invalid_argument("column relation degree exceeds k");
    F cf(c);
    for (std::size_t r = 0; r < M.rows(); ++r) v[r] += cf * M(r, col);
  }
  return v;
}

template <class F>
bool is_column_relation(const Matrix<F>& M, const Poly2& q) {
  for (const auto& v : column_combination(M, q))
    if (!is_zero(v)) return false;
  return true;
}

struct RgKind {
  enum Tag { Circular, Parabolic } tag = Circular;
  Rat a = 0;  // circular parameter
  static RgKind circular(const Rat& a) { return {Circular, a}; }
  static RgKind parabolic() { return {Parabolic, Rat(0)}; }
};

// a b_{i,2+j} + b_{2+i,1+j} = -b_{i,3+j}   (circular)
// b_{i,j+3} = b_{i+1,j+1}                 (parabolic)
// for all i + j <= 2k - 3.
template <class F>
bool check_rg_family(const MomentSeq<F>& beta, const RgKind& kind) {
  const int top = 2 * beta.k() - 3;
  for (int d = 0; d <= top; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (kind.tag == RgKind::Circular) {
        if (!is_zero(F(kind.a) * beta(i, 2 + j) + beta(2 + i, 1 + j) + beta(i, 3 + j))) return false;
      } else {
        if (!(beta(i, j + 3) == beta(i + 1, j + 1))) return false;
      }
    }
  return true;
}

}  // namespace mc
