#pragma once

// Moment problems on two conics: the unit circle x^2 + y^2 = 1 and the
// parabola x = y^2.

#include <vector>

#include "momentcurve/moments.hpp"
#include "momentcurve/report.hpp"
#include "momentcurve/transforms.hpp"

namespace mc {

// Unit circle: M(k) psd and b_{2+i,j} + b_{i,2+j} = b_{i,j} for i + j <= 2k-2.
SolveReport solve_circle(const MomentSequence& beta);

// Parabola x = y^2: b_{1+i,j} = b_{i,2+j} for i + j <= 2k-2 and the
// interleaved sequence gamma has a representing measure on the line.
SolveReport solve_parabola(const MomentSequence& beta);

// gamma_i = beta_{floor(i/2), i mod 2}, i = 0..4k.
template <class F>
std::vector<F> gamma_of(const MomentSeq<F>& beta) {
  std::vector<F> g(static_cast<std::size_t>(4 * beta.k() + 1));
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = beta(static_cast<int>(i / 2), static_cast<int>(i % 2));
  return g;
}

template <class F>
bool circle_relations_hold(const MomentSeq<F>& beta) {
  for (int d = 0; d <= 2 * beta.k() - 2; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (!(beta(2 + i, j) + beta(i, 2 + j) == beta(i, j))) return false;
    }
  return true;
}

template <class F>
bool parabola_relations_hold(const MomentSeq<F>& beta) {
  for (int d = 0; d <= 2 * beta.k() - 2; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (!(beta(1 + i, j) == beta(i, 2 + j))) return false;
    }
  return true;
}

// (x, y) -> ((2/|a|) x, (2/a) y + 1): carries a y + x^2 + y^2 = 0 onto the
// unit circle.  Throws InputError for a = 0.
AffineMap circle_normalizer(const Rat& a);

template <class F>
MomentSeq<F> to_unit_circle(const MomentSeq<F>& beta, const Rat& a) {
  return pushforward(beta, circle_normalizer(a));
}

}  // namespace mc
