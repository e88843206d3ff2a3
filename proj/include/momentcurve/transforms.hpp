#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "momentcurve/moments.hpp"
#include "momentcurve/report.hpp"

namespace mc {

// phi(x, y) = (a + b x + c y, d + e x + f y) with b f - c e != 0.
struct AffineMap {
  Rat a = 0, b = 1, c = 0, d = 0, e = 0, f = 1;

  static AffineMap identity() { return {}; }
  static AffineMap swap() { return {0, 0, 1, 0, 1, 0}; }

  Rat det() const { return b * f - c * e; }
  bool invertible() const { return sgn(det()) != 0; }
  AffineMap inverse() const;
  std::pair<Rat, Rat> apply(const Rat& x, const Rat& y) const {
    return {a + b * x + c * y, d + e * x + f * y};
  }
  Poly2 first() const;   // a + b x + c y
  Poly2 second() const;  // d + e x + f y
  friend bool operator==(const AffineMap& p, const AffineMap& q) {
    return p.a == q.a && p.b == q.b && p.c == q.c && p.d == q.d && p.e == q.e && p.f == q.f;
  }
};

// (outer o inner)(x, y) = outer(inner(x, y)).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

// q(phi(x, y)).
Poly2 substitute(const Poly2& q, const AffineMap& phi);

// The image sequence: tilde beta_{i,j} = L_beta(phi_1^i phi_2^j).
template <class F>
MomentSeq<F> pushforward(const MomentSeq<F>& beta, const AffineMap& phi);

// Column relations move with the sequence: if q(X,Y) = 0 in M(k; beta) then
// (q o phi^{-1})(X,Y) = 0 in M(k; phi(beta)).
Poly2 transform_relation(const Poly2& q, const AffineMap& phi);

// ---------------------------------------------------------------------------

enum class CurveTag { ParallelLines, Circular, Parabolic, Hyperbolic1, Hyperbolic2, Hyperbolic3, IntersectingLines, Mixed };

std::string tag_name(CurveTag t);
std::optional<CurveTag> parse_tag(const std::string& s);

struct CanonicalForm {
  CurveTag tag = CurveTag::Parabolic;
  std::vector<QuadScalar> params;  // (a,b) parallel; (a) circular, hyp2, hyp3; (a,b,c) mixed

  // Terms of the canonical relation q (coefficients may be irrational).
  std::vector<std::pair<Monomial, QuadScalar>> relation_terms() const;
  // The relation as a rational polynomial; throws if a parameter is irrational.
  Poly2 relation() const;
  bool params_rational() const;
  std::string str() const;
};

// Checks q(X,Y) = 0 column-wise for an arbitrary coefficient field.
template <class F>
bool satisfies_relation(const Matrix<F>& M, const std::vector<std::pair<Monomial, QuadScalar>>& terms) {
  Vec<F> v(M.rows(), F(0));
  for (const auto& [m, c] : terms) {
    const std::size_t col = deglex_index(m.i, m.j);
    if (col >= M.cols()) return false;
    F coef;
    if constexpr (std::is_same_v<F, Rat>) {
      if (!c.is_rational()) return false;
      coef = c.a();
    } else {
      coef = F(c);
    }
    for (std::size_t r = 0; r < M.rows(); ++r) v[r] += coef * M(r, col);
  }
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

// All factorizations p = l * Q with l linear, over Q; one entry per distinct
// linear factor (up to scaling).  l is scaled so that its y-coefficient is 1,
// or its x-coefficient when it has no y term.
std::vector<std::pair<Poly2, Poly2>> linear_factors(const Poly2& p);

// The first linear factorization; throws InputError if p is irreducible.
std::pair<Poly2, Poly2> factor_cubic(const Poly2& p);

struct CanonicalizeOptions {
  // Reject inputs whose canonical form needs a sqrt scaling outside Q.
  bool strict_rational = false;
  // Check that M(k) has no column relation among monomials of degree <= 2.
  bool check_low_degree = true;
};

struct CanonResult {
  CanonicalForm form;
  AffineMap map;              // rational part of the composite transformation
  Rat y_scale_square = 1;     // composite = (x, sqrt(y_scale_square) y) o map
  bool rational = true;       // beta is valid; otherwise beta_q
  MomentSequence beta;        // image sequence when rational
  MomentSeq<QuadScalar> beta_q;
  Poly2 linear_factor, conic_factor;
  std::vector<std::string> steps;  // maps applied, in order
};

// Brings a sequence with a reducible cubic column relation p to one of the
// eight canonical forms.  Throws InputError on violated preconditions.
CanonResult canonicalize(const MomentSequence& beta, const Poly2& p, const CanonicalizeOptions& opt = {});

// Canonicalizes only the polynomial (no moments involved).
CanonResult canonicalize_polynomial(const Poly2& p, bool strict_rational = false);

}  // namespace mc
