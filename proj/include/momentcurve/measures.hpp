#pragma once

// Finitely atomic measures: exact synthesis of moment sequences, numeric
// verification, and recovery of a representing measure from a positive
// solver verdict.

#include <optional>
#include <random>
#include <vector>

#include "momentcurve/moments.hpp"
#include "momentcurve/numeric.hpp"
#include "momentcurve/report.hpp"
#include "momentcurve/transforms.hpp"

namespace mc {

struct Atom {
  Real x, y, w;
  std::optional<Rat> xq, yq, wq;  // set when the atom is exact

  static Atom exact(const Rat& x, const Rat& y, const Rat& w) {
    return {to_real(x), to_real(y), to_real(w), x, y, w};
  }
  static Atom numeric(const Real& x, const Real& y, const Real& w) { return {x, y, w, {}, {}, {}}; }
  bool is_exact() const { return xq.has_value() && yq.has_value() && wq.has_value(); }
};

struct AtomicMeasure {
  std::vector<Atom> atoms;
  bool is_exact() const;
};

// beta_{i,j} = sum w x^i y^j, exactly.  Needs exact atoms with w > 0.
MomentSequence moments_of(const AtomicMeasure& mu, int k);

// As moments_of, after checking that every atom lies on the canonical curve.
MomentSequence synthesize(const CanonicalForm& curve, const AtomicMeasure& mu, int k);

// max over (i,j) of |beta_ij - sum w x^i y^j| / (1 + |beta_ij|) <= rel_tol.
// Exact measures are compared exactly.
bool verify(const MomentSequence& beta, const AtomicMeasure& mu, double rel_tol);
Real max_relative_residual(const MomentSequence& beta, const AtomicMeasure& mu);

enum class CubicType { Circular, Parabolic };

// Recovers a representing measure from a positive verdict of the matching
// cubic solver (the witness in `report` selects the split between the line
// and the conic).  The result is checked against beta at rel_tol; failures
// throw NumericFailure with the residual.
AtomicMeasure extract(const MomentSequence& beta, CubicType type, const Rat& a, const SolveReport& report,
                      double rel_tol = 1e-8);

// Atoms of a measure on the unit circle from its moments (numeric).  `rank`
// is the exact rank of the moment matrix.
std::vector<Atom> circle_atoms(const MomentSeq<QuadScalar>& beta, std::size_t rank, double rel_tol);

// Rational points on the canonical curves.
inline std::pair<Rat, Rat> line_point(const Rat& s) { return {s, Rat(0)}; }
inline std::pair<Rat, Rat> parabola_point(const Rat& s) { return {s * s, s}; }
// Point of a y + x^2 + y^2 = 0 with tangent-half-angle parameter m; m = 0
// gives the origin.
inline std::pair<Rat, Rat> circle_point(const Rat& a, const Rat& m) {
  const Rat d = 1 + m * m;
  return {a * m / d, -a * m * m / d};
}

// Random rational with numerator and denominator bounded by `height`.
Rat random_rational(std::mt19937_64& rng, int height, bool allow_zero = true);

}  // namespace mc
