#include "momentcurve/cubic_parabolic.hpp"

#include <numeric>
#include <sstream>

#include "momentcurve/conics.hpp"
#include "momentcurve/univariate.hpp"

namespace mc {

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

bool pd(const SymMat& A) { return A.rows() == 0 || is_pd(A); }

std::size_t atoms_at(const ParabolicWork& w, const Witness& p) {
  const QuadMat G = parabolic_G(w, p.t, p.u);
  return rank(conic_part(w.blocks, G)) + rank(line_part(w.blocks, G));
}

// Both parts at (t, u) have representing measures: psd plus the Hamburger
// test on the line part and on the parabola's pull-back to the y-axis.
bool representable_at(const ParabolicWork& w, const MomentSequence& beta, const Witness& p) {
  const QuadMat G = parabolic_G(w, p.t, p.u);
  if (!is_psd(conic_part(w.blocks, G)) || !is_psd(line_part(w.blocks, G))) return false;
  if (!solve_hamburger(hankel_entries(line_part(w.blocks, G))).exists) return false;
  return solve_hamburger(gamma_of(conic_sequence(w.blocks, beta, G))).exists;
}

// Points where t u = eta^2 meets (k11 - t)(k22 - u) = k12^2 inside both
// regions.  Substituting u = eta^2 / t leaves
//   k22 t^2 - (k11 k22 + eta^2 - k12^2) t + k11 eta^2 = 0.
std::vector<Witness> corner_points(const ParabolicWork& w) {
  std::vector<Witness> out;
  const Rat e2 = w.eta * w.eta;
  if (sgn(w.k22) <= 0 || sgn(e2) == 0) return out;
  const Rat B = w.k11 * w.k22 + e2 - w.k12 * w.k12;
  const Rat disc = B * B - 4 * w.k22 * w.k11 * e2;
  if (sgn(disc) < 0) return out;
  const QuadScalar root = QuadScalar::sqrt(disc);
  for (int s : {1, -1}) {
    const QuadScalar t = (QuadScalar(B) + QuadScalar(Rat(s)) * root) / QuadScalar(2 * w.k22);
    if (is_zero(t)) continue;
    const QuadScalar u = QuadScalar(e2) / t;
    const RegionReport reg = region_membership(w, t, u);
    if (reg.in_R1 && reg.in_R2) out.push_back({t, u});
    if (sgn(disc) == 0) break;
  }
  return out;
}

}  // namespace

ParabolicWork compute_parabolic_work(const MomentSequence& beta) {
  ParabolicWork w;
  w.blocks = assemble_blocks(beta);
  const std::size_t k = static_cast<std::size_t>(w.blocks.k);
  w.A_min = w.blocks.A_min;
  w.eta = w.A_min(1, k - 1) - w.A_min(0, k);
  w.A_hat = w.A_min;
  w.A_hat(0, k) += w.eta;
  w.A_hat(k, 0) += w.eta;
  w.H_hat = line_part(w.blocks, w.A_hat);

  const auto mid = range(1, k);
  w.H1 = w.H_hat.principal(range(0, k));
  w.H2 = w.H_hat.principal(range(1, k + 1));
  w.H22 = w.H_hat.principal(mid);
  for (std::size_t j : mid) {
    w.h12.push_back(w.H_hat(0, j));
    w.h23.push_back(w.H_hat(k, j));
  }
  // Schur complement of H22 in H_hat; the remaining indices are 0 and k.
  const SymMat K = schur(w.H_hat, mid);
  w.k11 = K(0, 0);
  w.k12 = K(0, 1);
  w.k22 = K(1, 1);
  w.t1 = schur(w.H1, range(1, k))(0, 0);
  w.u1 = schur(w.H2, range(0, k - 1))(0, 0);

  std::vector<std::size_t> fidx;
  fidx.push_back(w.blocks.n1);  // Y
  for (std::size_t i = 1; i < k; ++i) {
    fidx.push_back(i);                   // X^i
    fidx.push_back(w.blocks.n1 + i);     // X^i Y
  }
  w.F22 = conic_part(w.blocks, w.A_hat).principal(fidx);
  return w;
}

RegionReport region_membership(const ParabolicWork& w, const QuadScalar& t, const QuadScalar& u) {
  RegionReport r;
  const QuadScalar eta(w.eta), k11(w.k11), k12(w.k12), k22(w.k22);
  r.in_R1 = quad_sign(t) >= 0 && quad_sign(u) >= 0 && quad_sign(t * u - eta * eta) >= 0;
  r.in_R2 = quad_sign((k11 - t) * (k22 - u) - k12 * k12) >= 0 && quad_sign(k11 - t) >= 0 && quad_sign(k22 - u) >= 0;
  const QuadMat G = parabolic_G(w, t, u);
  r.rank_F = rank(conic_part(w.blocks, G));
  r.rank_H = rank(line_part(w.blocks, G));
  return r;
}

SolveReport solve_parabolic_cubic(const MomentSequence& beta) {
  if (beta.k() < 3) throw InputError("the cubic solvers need k >= 3");
  SolveReport rep;
  const auto pm = psd_rank(moment_matrix(beta));
  rep.note("rank_M", pm.rank);
  if (!pm.is_psd) {
    rep.clause = "M not psd";
    return rep;
  }
  if (!check_rg_family(beta, RgKind::parabolic())) {
    rep.clause = "rg relations fail";
    return rep;
  }
  const ParabolicWork w = compute_parabolic_work(beta);
  const std::size_t k = static_cast<std::size_t>(w.blocks.k);
  rep.note("eta", w.eta);
  rep.note("t1", w.t1);
  rep.note("u1", w.u1);
  rep.note("k11", w.k11);
  rep.note("k12", w.k12);
  rep.note("k22", w.k22);

  const auto ph = psd_rank(w.H_hat);
  rep.note("rank_H(A_hat)", ph.rank);
  if (!ph.is_psd) {
    rep.clause = "H(A_hat) not psd";
    return rep;
  }
  if (sgn(w.u1) < 0) {
    rep.clause = "u1 < 0";
    return rep;
  }
  const SymMat head = w.H_hat.principal(range(0, k));
  const bool measure_property = pd(head) || rank(head) == ph.rank;
  rep.note("measure_property", measure_property);
  const bool F22_pd = pd(w.F22), H22_pd = pd(w.H22);
  rep.note("F22 pd", F22_pd);
  rep.note("H22 pd", H22_pd);
  const int es = sgn(w.eta);

  std::optional<Witness> wit;
  if (!F22_pd) {
    rep.clause = "a";
    if (es == 0 && measure_property) wit = Witness{0, 0};
  } else if (!H22_pd) {
    if (sgn(w.u1) == 0 && es == 0) {
      rep.clause = "b-i";
      wit = Witness{0, 0};
    } else if (sgn(w.u1) > 0 && sgn(w.t1) > 0 && w.t1 * w.u1 >= w.eta * w.eta && sgn(w.k12) == 0) {
      rep.clause = "b-ii";
      wit = Witness{w.t1, w.u1};
    } else {
      rep.clause = "b";
    }
  } else if (es == 0) {
    rep.clause = "c-i";
    if (measure_property) wit = Witness{0, 0};
  } else {
    rep.clause = "c-ii";
    const Rat p = w.k11 * w.k22;
    const Rat ak12 = abs(w.k12);
    // (sqrt(k11 k22) - |k12|)^2 - eta^2
    const QuadScalar gap(p + ak12 * ak12 - w.eta * w.eta, -2 * ak12, p);
    rep.note("c-ii value", [&] {
      std::ostringstream os;
      os << gap;
      return os.str();
    }());
    if (quad_sign(gap) >= 0) {
      if (sgn(w.k12) == 0) {
        wit = Witness{w.k11, w.k22};
      } else {
        // the point of the boundary hyperbola (k11 - t)(k22 - u) = k12^2
        // where t u is largest
        const QuadScalar root = QuadScalar::sqrt(p);
        wit = Witness{QuadScalar(w.k11) - QuadScalar(ak12 / w.k22) * root,
                      QuadScalar(w.k22) - QuadScalar(ak12 / w.k11) * root};
      }
    }
  }
  if (!wit) return rep;

  rep.exists = true;
  rep.witness = wit;
  const RegionReport reg = region_membership(w, wit->t, wit->u);
  rep.note("witness in R1", reg.in_R1);
  rep.note("witness in R2", reg.in_R2);

  const SymMat H_min = line_part(w.blocks, w.A_min);
  const std::size_t rH = rank(H_min), r22 = rank(w.H22);
  rep.note("rank_H(A_min)", rH);
  rep.note("rank_H22", r22);
  bool tight = es == 0 || rH == r22 + 2;
  if (!tight && rH == r22 + 1) {
    const Rat e2 = w.eta * w.eta;
    tight = (!H22_pd && w.t1 * w.u1 == e2) || (H22_pd && sgn(w.k12) == 0 && w.k11 * w.k22 == e2);
  }
  rep.minimal_atoms = tight ? pm.rank : pm.rank + 1;
  rep.atom_upper_bound = pm.rank + 1;

  // The extremal point of t u above can sit inside R1, where the conic part
  // costs one atom more than on its boundary.  When fewer atoms are
  // possible, move the witness to a common boundary point that still passes
  // the representability tests.
  std::size_t at_witness = atoms_at(w, *rep.witness);
  if (at_witness > *rep.minimal_atoms && H22_pd) {
    for (const Witness& c : corner_points(w)) {
      const std::size_t n = atoms_at(w, c);
      if (n < at_witness && representable_at(w, beta, c)) {
        rep.note("first witness", "(" + rep.witness->t.str() + ", " + rep.witness->u.str() + ")");
        rep.witness = c;
        rep.note("witness in R1", true);
        rep.note("witness in R2", true);
        at_witness = n;
      }
    }
  }
  rep.note("atoms at witness", at_witness);
  return rep;
}

}  // namespace mc
