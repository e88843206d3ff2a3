#pragma once

// Random exact instances shared by the unit, oracle and acceptance tests.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "momentcurve/blocks.hpp"
#include "momentcurve/measures.hpp"
#include "momentcurve/moments.hpp"
#include "momentcurve/transforms.hpp"

namespace mc::testing {

inline Rat rq(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat positive_rational(std::mt19937_64& rng, int height) {
  std::uniform_int_distribution<int> d(1, height);
  return rq(d(rng), d(rng));
}

// Adds an atom unless the point is already present (weights then merge).
inline void add_atom(AtomicMeasure& mu, const std::pair<Rat, Rat>& p, const Rat& w) {
  for (auto& at : mu.atoms)
    if (*at.xq == p.first && *at.yq == p.second) {
      at = Atom::exact(p.first, p.second, *at.wq + w);
      return;
    }
  mu.atoms.push_back(Atom::exact(p.first, p.second, w));
}

inline std::size_t count_on_line(const AtomicMeasure& mu) {
  return static_cast<std::size_t>(
      std::count_if(mu.atoms.begin(), mu.atoms.end(), [](const Atom& a) { return sgn(*a.yq) == 0; }));
}

struct CubicInstance {
  CubicType type = CubicType::Parabolic;
  Rat a = 0;  // circular parameter
  AtomicMeasure mu;
  MomentSequence beta;
  std::size_t line_atoms = 0, conic_atoms = 0;
};

// Circle points a y + x^2 + y^2 = 0 from the tangent half-angle m = p/q with
// |p|, q <= 4, so coordinates stay of small height.
inline std::pair<Rat, Rat> random_circle_point(std::mt19937_64& rng, const Rat& a) {
  std::uniform_int_distribution<int> p(-4, 4), q(1, 4);
  return circle_point(a, rq(p(rng), q(rng)));
}

inline std::pair<Rat, Rat> random_parabola_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> p(-7, 7), q(1, 7);
  return parabola_point(rq(p(rng), q(rng)));
}

// A measure with 0..max_line atoms on y = 0 and 0..max_conic atoms on the
// conic (at least one atom overall); coordinates and weights are rationals of
// small height.
inline CubicInstance random_cubic_instance(std::mt19937_64& rng, CubicType type, int k, int max_line = 5,
                                           int max_conic = 6, int height = 50) {
  CubicInstance inst;
  inst.type = type;
  if (type == CubicType::Circular) {
    std::uniform_int_distribution<int> an(-6, 6), ad(1, 3);
    do inst.a = rq(an(rng), ad(rng));
    while (sgn(inst.a) == 0);
  }
  std::uniform_int_distribution<int> nl(0, max_line), nc(0, max_conic);
  int n_line = 0, n_conic = 0;
  do {
    n_line = nl(rng);
    n_conic = nc(rng);
  } while (n_line + n_conic == 0);
  for (int n = 0; n < n_line; ++n) add_atom(inst.mu, line_point(random_rational(rng, height)), positive_rational(rng, height));
  for (int n = 0; n < n_conic; ++n) {
    const auto p = type == CubicType::Circular ? random_circle_point(rng, inst.a) : random_parabola_point(rng);
    add_atom(inst.mu, p, positive_rational(rng, height));
  }
  inst.line_atoms = count_on_line(inst.mu);
  inst.conic_atoms = inst.mu.atoms.size() - inst.line_atoms;
  inst.beta = moments_of(inst.mu, k);
  return inst;
}

inline CanonicalForm cubic_form(const CubicInstance& inst) {
  CanonicalForm f;
  if (inst.type == CubicType::Circular) {
    f.tag = CurveTag::Circular;
    f.params = {QuadScalar(inst.a)};
  } else {
    f.tag = CurveTag::Parabolic;
  }
  return f;
}

// The quadratic factor c with p = y c.
inline Poly2 conic_factor(CubicType type, const Rat& a) {
  if (type == CubicType::Circular)
    return Poly2::monomial(0, 1, a) + Poly2::monomial(2, 0) + Poly2::monomial(0, 2);
  return Poly2::x() - Poly2::monomial(0, 2);
}

// Random canonical form with parameters for which the curve is of that type.
inline CanonicalForm random_canonical_form(std::mt19937_64& rng, CurveTag tag) {
  CanonicalForm f;
  f.tag = tag;
  auto nz = [&] { return random_rational(rng, 6, false); };
  switch (tag) {
    case CurveTag::ParallelLines: {
      Rat a = nz(), b = nz();
      while (a == b) b = nz();
      f.params = {QuadScalar(a), QuadScalar(b)};
      break;
    }
    case CurveTag::Circular:
    case CurveTag::Hyperbolic2:
    case CurveTag::Hyperbolic3: f.params = {QuadScalar(nz())}; break;
    case CurveTag::Mixed: {
      // b > 0 keeps the conic away from y = 0; a is solved from a chosen point
      const Rat b = positive_rational(rng, 6);
      Rat a, c;
      for (;;) {
        c = nz();
        const Rat x0 = random_rational(rng, 5), y0 = nz();
        a = -(1 + b * x0 * x0 + c * y0 * y0) / y0;
        if (c != a * a / 4) break;
      }
      f.params = {QuadScalar(a), QuadScalar(b), QuadScalar(c)};
      break;
    }
    default: break;
  }
  return f;
}

// Rational points on the curve of a canonical form other than the line
// y = 0.  `s` is a free rational parameter; returns nothing for excluded
// parameter values.
inline std::optional<std::pair<Rat, Rat>> point_off_line(const CanonicalForm& f, const Rat& s, int branch) {
  auto P = [&](std::size_t n) { return f.params.at(n).a(); };
  switch (f.tag) {
    case CurveTag::ParallelLines: return std::pair<Rat, Rat>{s, -(branch % 2 ? P(0) : P(1))};
    case CurveTag::Circular: return circle_point(P(0), s);
    case CurveTag::Parabolic: return parabola_point(s);
    case CurveTag::Hyperbolic1:
      if (sgn(s) == 0) return std::nullopt;
      return std::pair<Rat, Rat>{s, 1 / s};
    case CurveTag::Hyperbolic2: {
      const Rat d = 1 + P(0) * s;
      if (sgn(d) == 0) return std::nullopt;
      return std::pair<Rat, Rat>{s, -s / d};
    }
    case CurveTag::Hyperbolic3: {
      const Rat d = 1 - s * s;
      if (sgn(d) == 0) return std::nullopt;
      const Rat x = -P(0) * s / d;
      return std::pair<Rat, Rat>{x, s * x};
    }
    case CurveTag::IntersectingLines:
      if (branch % 2) return std::pair<Rat, Rat>{Rat(0), s};
      return std::pair<Rat, Rat>{s, Rat(-1)};
    case CurveTag::Mixed: {
      // second intersection of the conic with lines through a known point
      const Rat a = P(0), b = P(1), c = P(2);
      // 1 + a y + b x^2 + c y^2 = 0 at x = 0 needs c y^2 + a y + 1 = 0; use
      // the point family through the rational point x0 found by scanning
      for (int num = -12; num <= 12; ++num)
        for (int den = 1; den <= 6; ++den) {
          const Rat x0 = rq(num, den);
          // c y^2 + a y + (1 + b x0^2) = 0 with rational y
          const Rat disc = a * a - 4 * c * (1 + b * x0 * x0);
          Rat root;
          if (!is_rational_square(disc, &root)) continue;
          const Rat y0 = (-a + root) / (2 * c);
          const Rat m = s;
          const Rat den2 = b + c * m * m;
          if (sgn(den2) == 0) return std::nullopt;
          const Rat t = -(a * m + 2 * b * x0 + 2 * c * y0 * m) / den2;
          return std::pair<Rat, Rat>{x0 + t, y0 + m * t};
        }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// Generic measure on the curve of `f`: n_line atoms on y = 0 and n_off atoms
// elsewhere on the curve.
inline AtomicMeasure random_curve_measure(std::mt19937_64& rng, const CanonicalForm& f, int n_line, int n_off) {
  AtomicMeasure mu;
  for (int n = 0; n < n_line; ++n) add_atom(mu, line_point(random_rational(rng, 9)), positive_rational(rng, 9));
  int made = 0, tries = 0;
  while (made < n_off && tries++ < 1000) {
    const auto p = point_off_line(f, random_rational(rng, 5), made);
    if (!p || sgn(p->second) == 0) continue;
    const std::size_t before = mu.atoms.size();
    add_atom(mu, *p, positive_rational(rng, 9));
    if (mu.atoms.size() > before) ++made;
  }
  return mu;
}

inline AffineMap random_invertible_map(std::mt19937_64& rng, int height) {
  for (;;) {
    AffineMap m{random_rational(rng, height), random_rational(rng, height), random_rational(rng, height),
                random_rational(rng, height), random_rational(rng, height), random_rational(rng, height)};
    if (m.invertible()) return m;
  }
}

}  // namespace mc::testing
