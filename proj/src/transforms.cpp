#include "momentcurve/transforms.hpp"

#include <functional>
#include <sstream>

#include "momentcurve/upoly.hpp"

namespace mc {

AffineMap AffineMap::inverse() const {
  const Rat D = det();
  if (sgn(D) == 0) throw InputError("affine map is not invertible (bf - ce = 0)");
  // x = (f (X - a) - c (Y - d)) / D,  y = (-e (X - a) + b (Y - d)) / D
  AffineMap r;
  r.b = f / D;
  r.c = -c / D;
  r.a = -(r.b * a + r.c * d);
  r.e = -e / D;
  r.f = b / D;
  r.d = -(r.e * a + r.f * d);
  return r;
}

Poly2 AffineMap::first() const {
  Poly2 p(a);
  p.set(1, 0, b);
  p.set(0, 1, c);
  return p;
}

Poly2 AffineMap::second() const {
  Poly2 p(d);
  p.set(1, 0, e);
  p.set(0, 1, f);
  return p;
}

AffineMap compose(const AffineMap& o, const AffineMap& in) {
  AffineMap r;
  r.a = o.a + o.b * in.a + o.c * in.d;
  r.b = o.b * in.b + o.c * in.e;
  r.c = o.b * in.c + o.c * in.f;
  r.d = o.d + o.e * in.a + o.f * in.d;
  r.e = o.e * in.b + o.f * in.e;
  r.f = o.e * in.c + o.f * in.f;
  return r;
}

Poly2 substitute(const Poly2& q, const AffineMap& phi) {
  const int deg = std::max(q.degree(), 0);
  std::vector<Poly2> p1{Poly2(Rat(1))}, p2{Poly2(Rat(1))};
  const Poly2 f1 = phi.first(), f2 = phi.second();
  for (int n = 1; n <= deg; ++n) {
    p1.push_back(p1.back() * f1);
    p2.push_back(p2.back() * f2);
  }
  Poly2 out;
  for (const auto& [e, c] : q.terms()) out += c * (p1[e.first] * p2[e.second]);
  return out;
}

Poly2 transform_relation(const Poly2& q, const AffineMap& phi) { return substitute(q, phi.inverse()); }

template <class F>
MomentSeq<F> pushforward(const MomentSeq<F>& beta, const AffineMap& phi) {
  if (!phi.invertible()) throw InputError("affine map is not invertible (bf - ce = 0)");
  const int n = beta.degree();
  std::vector<Poly2> p1{Poly2(Rat(1))}, p2{Poly2(Rat(1))};
  const Poly2 f1 = phi.first(), f2 = phi.second();
  for (int m = 1; m <= n; ++m) {
    p1.push_back(p1.back() * f1);
    p2.push_back(p2.back() * f2);
  }
  MomentSeq<F> out(beta.k());
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) out(d - j, j) = riesz(beta, p1[d - j] * p2[j]);
  return out;
}

template MomentSeq<Rat> pushforward(const MomentSeq<Rat>&, const AffineMap&);
template MomentSeq<QuadScalar> pushforward(const MomentSeq<QuadScalar>&, const AffineMap&);

// ---------------------------------------------------------------------------

std::string tag_name(CurveTag t) {
  switch (t) {
    case CurveTag::ParallelLines: return "parallel_lines";
    case CurveTag::Circular: return "circular";
    case CurveTag::Parabolic: return "parabolic";
    case CurveTag::Hyperbolic1: return "hyperbolic1";
    case CurveTag::Hyperbolic2: return "hyperbolic2";
    case CurveTag::Hyperbolic3: return "hyperbolic3";
    case CurveTag::IntersectingLines: return "intersecting_lines";
    case CurveTag::Mixed: return "mixed";
  }
  return "unknown";
}

std::optional<CurveTag> parse_tag(const std::string& s) {
  for (int t = 0; t <= static_cast<int>(CurveTag::Mixed); ++t)
    if (tag_name(static_cast<CurveTag>(t)) == s) return static_cast<CurveTag>(t);
  return std::nullopt;
}

std::vector<std::pair<Monomial, QuadScalar>> CanonicalForm::relation_terms() const {
  auto P = [&](std::size_t n) -> const QuadScalar& {
    if (n >= params.size()) throw std::logic_error("canonical form is missing parameters");
    return params[n];
  };
  std::vector<std::pair<Monomial, QuadScalar>> t;
  switch (tag) {
    case CurveTag::ParallelLines:  // y(y+a)(y+b)
      t = {{{0, 3}, 1}, {{0, 2}, P(0) + P(1)}, {{0, 1}, P(0) * P(1)}};
      break;
    case CurveTag::Circular:  // y(ay + x^2 + y^2)
      t = {{{0, 2}, P(0)}, {{2, 1}, 1}, {{0, 3}, 1}};
      break;
    case CurveTag::Parabolic:  // y(x - y^2)
      t = {{{1, 1}, 1}, {{0, 3}, -1}};
      break;
    case CurveTag::Hyperbolic1:  // y(1 - xy)
      t = {{{0, 1}, 1}, {{1, 2}, -1}};
      break;
    case CurveTag::Hyperbolic2:  // y(x + y + axy)
      t = {{{1, 1}, 1}, {{0, 2}, 1}, {{1, 2}, P(0)}};
      break;
    case CurveTag::Hyperbolic3:  // y(ay + x^2 - y^2)
      t = {{{0, 2}, P(0)}, {{2, 1}, 1}, {{0, 3}, -1}};
      break;
    case CurveTag::IntersectingLines:  // yx(y+1)
      t = {{{1, 2}, 1}, {{1, 1}, 1}};
      break;
    case CurveTag::Mixed:  // y(1 + ay + bx^2 + cy^2)
      t = {{{0, 1}, 1}, {{0, 2}, P(0)}, {{2, 1}, P(1)}, {{0, 3}, P(2)}};
      break;
  }
  std::vector<std::pair<Monomial, QuadScalar>> nz;
  for (auto& term : t)
    if (!is_zero(term.second)) nz.push_back(term);
  return nz;
}

bool CanonicalForm::params_rational() const {
  for (const auto& p : params)
    if (!p.is_rational()) return false;
  return true;
}

Poly2 CanonicalForm::relation() const {
  Poly2 q;
  for (const auto& [m, c] : relation_terms()) {
    if (!c.is_rational()) throw InputError("canonical relation has irrational coefficients");
    q.set(m.i, m.j, c.a());
  }
  return q;
}

std::string CanonicalForm::str() const {
  std::ostringstream os;
  os << tag_name(tag);
  if (!params.empty()) {
    os << "(";
    for (std::size_t n = 0; n < params.size(); ++n) os << (n ? ", " : "") << params[n];
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Factorization.

namespace {

Poly2 normalize_linear(const Poly2& l, Rat* scale) {
  Rat s = l.coeff(0, 1);
  if (sgn(s) == 0) s = l.coeff(1, 0);
  if (sgn(s) == 0) throw std::logic_error("constant passed as a linear factor");
  *scale = s;
  return l * (Rat(1) / s);
}

}  // namespace

std::vector<std::pair<Poly2, Poly2>> linear_factors(const Poly2& p) {
  if (p.degree() != 3) throw InputError("expected a polynomial of degree 3, got degree " + std::to_string(p.degree()));
  // Coordinates (u, v) = psi(x, y) with u the direction of a candidate factor.
  std::vector<AffineMap> charts;
  if (sgn(p.coeff(3, 0)) == 0) charts.push_back(AffineMap::swap());  // u = y
  {
    std::vector<Rat> top(4);
    for (int j = 0; j <= 3; ++j) top[3 - j] = p.coeff(3 - j, j);  // p3(t, 1)
    for (const Rat& r : rational_roots(UPoly<Rat>(top))) charts.push_back({0, 1, -r, 0, 0, 1});  // u = x - r y
  }
  std::vector<std::pair<Poly2, Poly2>> out;
  for (const AffineMap& psi : charts) {
    Poly2 pt = transform_relation(p, psi);  // p in (u, v)
    std::vector<std::vector<Rat>> cols(4, std::vector<Rat>(4, Rat(0)));
    for (const auto& [e, c] : pt.terms()) cols[e.second][e.first] = c;  // P_j(u) coefficients
    UPoly<Rat> g;
    for (int j = 0; j <= 3; ++j) {
      UPoly<Rat> Pj(cols[j]);
      if (Pj.is_zero()) continue;
      g = g.is_zero() ? Pj.monic() : gcd(g, Pj);
    }
    for (const Rat& rho : rational_roots(g)) {
      UPoly<Rat> lin(std::vector<Rat>{-rho, Rat(1)});
      Poly2 qt;
      for (int j = 0; j <= 3; ++j) {
        UPoly<Rat> Pj(cols[j]), q, r;
        if (Pj.is_zero()) continue;
        Pj.divmod(lin, q, r);
        if (!r.is_zero()) throw std::logic_error("linear factor division left a remainder");
        for (int i = 0; i <= q.degree(); ++i) qt.set(i, j, q[static_cast<std::size_t>(i)]);
      }
      Poly2 l = substitute(Poly2::x() - Poly2(rho), psi);
      Poly2 Q = substitute(qt, psi);
      Rat s;
      l = normalize_linear(l, &s);
      Q = Q * s;
      if (!(l * Q == p)) throw std::logic_error("factorization check failed");
      bool dup = false;
      for (const auto& f : out)
        if (f.first == l) dup = true;
      if (!dup) out.push_back({l, Q});
    }
  }
  return out;
}

std::pair<Poly2, Poly2> factor_cubic(const Poly2& p) {
  auto f = linear_factors(p);
  if (f.empty()) throw InputError("polynomial " + p.str() + " is irreducible over Q");
  return f.front();
}

// ---------------------------------------------------------------------------
// Canonicalization.

namespace {

struct TreeState {
  AffineMap phi;
  Poly2 c;  // the relation is y * c in current coordinates
  Rat y_scale_square = 1;
  std::vector<std::string> steps;

  Rat C(int i, int j) const { return c.coeff(i, j); }

  void apply(const AffineMap& psi, const std::string& name) {
    if (psi == AffineMap::identity()) return;
    const bool keeps_line = sgn(psi.d) == 0 && sgn(psi.e) == 0;
    if (!keeps_line && name != "swap" && name != "line-to-y")
      throw std::logic_error("map " + name + " does not preserve the line y = 0");
    phi = compose(psi, phi);
    c = transform_relation(c, psi);
    std::ostringstream os;
    os << name << " (" << psi.a << ", " << psi.b << ", " << psi.c << ", " << psi.d << ", " << psi.e << ", " << psi.f << ")";
    steps.push_back(os.str());
  }
  void scale(const Rat& s) { c = c * s; }
};

struct Failure {
  std::string why;
};

struct Outcome {
  CanonicalForm form;
  TreeState st;
};

AffineMap map_x(const Rat& a, const Rat& b, const Rat& c) { return {a, b, c, 0, 0, 1}; }  // x' = a + b x + c y
AffineMap map_y(const Rat& f) { return {0, 1, 0, 0, 0, f}; }                             // y' = f y

// c = x + c2 y + c4 xy + c5 y^2
Outcome branch_through_origin(TreeState st) {
  const Rat c4 = st.C(1, 1), c5 = st.C(0, 2);
  if (sgn(c4) != 0) {
    st.apply(map_x(0, 1, c5 / c4), "shear");
    const Rat c2 = st.C(0, 1);
    if (sgn(c2) == 0) {
      st.apply(map_y(c4), "scale-y");
      return {{CurveTag::IntersectingLines, {}}, st};
    }
    st.apply(map_y(c2), "scale-y");
    return {{CurveTag::Hyperbolic2, {QuadScalar(c4 / c2)}}, st};
  }
  if (sgn(c5) == 0) throw Failure{"conic factor is linear"};
  const Rat c2 = st.C(0, 1);
  if (sgn(c2) == 0) {
    st.apply(map_x(0, -1 / c5, 0), "scale-x");
    return {{CurveTag::Parabolic, {}}, st};
  }
  st.apply(map_y(c2), "scale-y");
  const Rat c5b = st.C(0, 2) / st.C(1, 0);
  st.scale(1 / st.C(1, 0));
  st.apply(map_x(0, -1 / c5b, -1 / c5b), "shear-scale-x");
  return {{CurveTag::Parabolic, {}}, st};
}

Outcome run_tree(const Poly2& l, const Poly2& Q) {
  TreeState st;
  st.c = Q;
  Poly2 line = l;
  if (sgn(line.coeff(0, 1)) == 0) {
    st.apply(AffineMap::swap(), "swap");
    line = transform_relation(line, AffineMap::swap());
  }
  st.apply({0, 1, 0, line.coeff(0, 0), line.coeff(1, 0), line.coeff(0, 1)}, "line-to-y");

  const Rat c3 = st.C(2, 0);
  if (sgn(c3) == 0) {
    const Rat c0 = st.C(0, 0), c1 = st.C(1, 0), c2 = st.C(0, 1);
    if (sgn(c0) == 0 && sgn(c1) == 0 && sgn(c2) == 0) throw Failure{"repeated line factor"};
    if (sgn(c0) != 0) {
      st.scale(1 / c0);
      const Rat d1 = st.C(1, 0), d2 = st.C(0, 1), d4 = st.C(1, 1), d5 = st.C(0, 2);
      if (sgn(d1) == 0) {
        if (sgn(d4) == 0) {
          // parallel lines: 1 + d2 y + d5 y^2 = d5 (y + a)(y + b)
          if (sgn(d5) == 0) throw Failure{"conic factor is linear"};
          const Rat disc = d2 * d2 - 4 * d5;
          if (sgn(disc) < 0) throw Failure{"conic factor has no real points"};
          if (sgn(disc) == 0) throw Failure{"repeated line factor"};
          // roots y = (-d2 -+ sqrt(disc)) / (2 d5); a, b are their negatives
          QuadScalar r = QuadScalar::sqrt(disc);
          QuadScalar a = (QuadScalar(d2) - r) / QuadScalar(Rat(2) * d5);
          QuadScalar b = (QuadScalar(d2) + r) / QuadScalar(Rat(2) * d5);
          if (b < a) std::swap(a, b);
          return {{CurveTag::ParallelLines, {a, b}}, st};
        }
        st.apply(map_x(-d2, -d4, -d5), "hyperbola-coordinates");
        return {{CurveTag::Hyperbolic1, {}}, st};
      }
      st.apply(map_x(1, d1, 0), "translate-scale-x");
      return branch_through_origin(st);
    }
    if (sgn(c1) == 0) throw Failure{"repeated line factor"};
    st.apply(map_x(0, c1, 0), "scale-x");
    st.scale(1 / st.C(1, 0));
    return branch_through_origin(st);
  }

  st.scale(1 / c3);
  if (sgn(st.C(1, 0)) != 0) st.apply(map_x(st.C(1, 0) / 2, 1, 0), "translate-x");
  const Rat c0 = st.C(0, 0);
  if (sgn(c0) == 0) {
    st.apply(map_x(0, 1, st.C(1, 1) / 2), "shear");
    const Rat c2 = st.C(0, 1), c5 = st.C(0, 2);
    if (sgn(c5) == 0) {
      if (sgn(c2) == 0) throw Failure{"repeated line factor"};
      throw Failure{"line tangent to a parabola at its vertex; not one of the eight canonical types"};
    }
    if (sgn(c2) == 0 && sgn(c5) > 0) throw Failure{"conic factor degenerates to a point"};
    const Rat D = abs(c5);
    Rat s;
    QuadScalar a;
    if (is_rational_square(D, &s)) {
      st.apply(map_y(s), "scale-y");
      a = QuadScalar(st.C(0, 1));
    } else {
      st.y_scale_square = D;
      a = QuadScalar(Rat(0), c2 / D, D);  // c2 / sqrt(D)
      st.steps.push_back("scale-y by sqrt(" + to_string(D) + ")");
    }
    if (sgn(c5) > 0) return {{CurveTag::Circular, {a}}, st};
    return {{CurveTag::Hyperbolic3, {a}}, st};
  }
  st.scale(1 / c0);
  const Rat b = st.C(2, 0);
  st.apply(map_x(0, 1, st.C(1, 1) / (2 * b)), "shear");
  return {{CurveTag::Mixed, {QuadScalar(st.C(0, 1)), QuadScalar(b), QuadScalar(st.C(0, 2))}}, st};
}

// y * c must be a nonzero multiple of the canonical relation (after the
// symbolic y scaling, if any).
bool verify_outcome(const Outcome& o) {
  Poly2 rel = Poly2::y() * o.st.c;
  std::vector<std::pair<Monomial, QuadScalar>> have;
  for (const auto& [e, c] : rel.terms()) {
    QuadScalar v(c);
    // y -> y / sqrt(D): the term x^i y^j picks up D^{-j/2}
    if (o.st.y_scale_square != 1) {
      QuadScalar f(1);
      QuadScalar inv_root = QuadScalar(Rat(0), 1 / o.st.y_scale_square, o.st.y_scale_square);
      for (int n = 0; n < e.second; ++n) f *= inv_root;
      v *= f;
    }
    have.push_back({{e.first, e.second}, v});
  }
  auto want = o.form.relation_terms();
  if (have.size() != want.size() || want.empty()) return false;
  QuadScalar lambda;
  bool first = true;
  for (const auto& [m, c] : want) {
    auto it = std::find_if(have.begin(), have.end(), [&](const auto& h) { return h.first == m; });
    if (it == have.end()) return false;
    if (first) {
      lambda = it->second / c;
      first = false;
    } else if (!(it->second == lambda * c)) {
      return false;
    }
  }
  return true;
}

}  // namespace

CanonResult canonicalize_polynomial(const Poly2& p, bool strict_rational) {
  auto factors = linear_factors(p);
  if (factors.empty()) throw InputError("polynomial " + p.str() + " is irreducible over Q");
  std::optional<Outcome> best;
  std::pair<Poly2, Poly2> best_factors;
  std::string failures;
  for (const auto& [l, Q] : factors) {
    try {
      Outcome o = run_tree(l, Q);
      if (!verify_outcome(o)) throw std::logic_error("canonical relation check failed for " + o.form.str());
      if (strict_rational && o.st.y_scale_square != 1) {
        failures += "[" + l.str() + "] needs scaling by sqrt(" + to_string(o.st.y_scale_square) + "); ";
        continue;
      }
      if (!best || static_cast<int>(o.form.tag) < static_cast<int>(best->form.tag)) {
        best = o;
        best_factors = {l, Q};
      }
    } catch (const Failure& f) {
      failures += "[" + l.str() + "] " + f.why + "; ";
    }
  }
  if (!best) throw InputError("no canonical form: " + failures);
  CanonResult r;
  r.form = best->form;
  r.map = best->st.phi;
  r.y_scale_square = best->st.y_scale_square;
  r.rational = r.y_scale_square == 1;
  r.linear_factor = best_factors.first;
  r.conic_factor = best_factors.second;
  r.steps = best->st.steps;
  return r;
}

CanonResult canonicalize(const MomentSequence& beta, const Poly2& p, const CanonicalizeOptions& opt) {
  if (p.degree() != 3) throw InputError("relation must have degree 3");
  if (beta.k() < 3) throw InputError("canonicalization needs k >= 3");
  SymMat M = moment_matrix(beta);
  if (!is_column_relation(M, p)) throw InputError("p is not a column relation of M(k)");
  if (opt.check_low_degree) {
    std::vector<std::size_t> rows(M.rows()), low{0, 1, 2, 3, 4, 5};
    for (std::size_t i = 0; i < M.rows(); ++i) rows[i] = i;
    if (rank(M.sub(rows, low)) < 6) throw InputError("M(k) has a column relation among monomials of degree <= 2");
  }
  CanonResult r = canonicalize_polynomial(p, opt.strict_rational);
  MomentSequence img = pushforward(beta, r.map);
  if (r.rational) {
    r.beta = img;
    if (!satisfies_relation(moment_matrix(r.beta), r.form.relation_terms()))
      throw std::logic_error("canonical relation does not hold in the transformed moment matrix");
  } else {
    const Rat D = r.y_scale_square;
    r.beta_q = MomentSeq<QuadScalar>(beta.k());
    for (int d = 0; d <= img.degree(); ++d)
      for (int j = 0; j <= d; ++j) {
        QuadScalar f = QuadScalar(Rat(1));
        Rat pw = 1;
        for (int n = 0; n < j / 2; ++n) pw *= D;
        f = j % 2 == 0 ? QuadScalar(pw) : QuadScalar(Rat(0), pw, D);
        r.beta_q(d - j, j) = f * QuadScalar(img(d - j, j));
      }
    if (!satisfies_relation(moment_matrix(r.beta_q), r.form.relation_terms()))
      throw std::logic_error("canonical relation does not hold in the transformed moment matrix");
  }
  return r;
}

}  // namespace mc
