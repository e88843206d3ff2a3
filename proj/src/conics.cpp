#include "momentcurve/conics.hpp"

#include "momentcurve/univariate.hpp"

namespace mc {

SolveReport solve_circle(const MomentSequence& beta) {
  if (beta.k() < 2) throw InputError("circle moment problem needs k >= 2");
  SolveReport rep;
  const auto pr = psd_rank(moment_matrix(beta));
  rep.note("rank_M", pr.rank);
  if (!pr.is_psd) {
    rep.clause = "M(k) not psd";
    return rep;
  }
  if (!circle_relations_hold(beta)) {
    rep.clause = "circle relations fail";
    return rep;
  }
  rep.exists = true;
  rep.clause = "M(k) psd and circle relations hold";
  rep.minimal_atoms = pr.rank;
  rep.atom_upper_bound = pr.rank;
  return rep;
}

SolveReport solve_parabola(const MomentSequence& beta) {
  if (beta.k() < 2) throw InputError("parabola moment problem needs k >= 2");
  SolveReport rep;
  if (!parabola_relations_hold(beta)) {
    rep.clause = "parabola relations fail";
    return rep;
  }
  const SolveReport g = solve_hamburger(gamma_of(beta));
  rep.note("gamma", g.clause);
  if (!g.exists) {
    rep.clause = "gamma has no representing measure";
    return rep;
  }
  const std::size_t r = rank(moment_matrix(beta));
  rep.note("rank_M", r);
  rep.exists = true;
  rep.clause = "gamma has a representing measure";
  rep.minimal_atoms = r;
  rep.atom_upper_bound = r;
  return rep;
}

AffineMap circle_normalizer(const Rat& a) {
  if (sgn(a) == 0) throw InputError("circular parameter a must be nonzero");
  return {0, 2 / abs(a), 0, 1, 0, 2 / a};
}

}  // namespace mc
