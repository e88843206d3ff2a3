#include "momentcurve/cubic_circular.hpp"

#include <numeric>
#include <sstream>

#include "momentcurve/univariate.hpp"

namespace mc {

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

Rat bilinear(const Vec<Rat>& x, const SymMat& P, const Vec<Rat>& y) {
  Rat s = 0;
  const Vec<Rat> Py = mat_vec(P, y);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * Py[i];
  return s;
}

}  // namespace

CircularWork compute_circular_work(const MomentSequence& beta, const Rat& a) {
  CircularWork w;
  w.a = a;
  w.blocks = assemble_blocks(beta);
  const std::size_t k = static_cast<std::size_t>(w.blocks.k);
  w.A_min = w.blocks.A_min;
  w.eta = w.A_min(0, 2) - w.A_min(1, 1);
  w.A_hat = w.A_min;
  w.A_hat(1, 1) += w.eta;
  w.H_hat = line_part(w.blocks, w.A_hat);

  std::vector<std::size_t> rest = range(2, k + 1);
  std::vector<std::size_t> i1{0}, i2 = range(1, k + 1);
  i1.insert(i1.end(), rest.begin(), rest.end());
  w.H1 = w.H_hat.principal(i1);
  w.H2 = w.H_hat.principal(i2);
  w.H22 = w.H_hat.principal(rest);
  for (std::size_t j : rest) {
    w.h1.push_back(w.H_hat(0, j));
    w.h2.push_back(w.H_hat(1, j));
  }
  const SymMat P = pinv(w.H22);
  w.u0 = w.H_hat(0, 1) - bilinear(w.h1, P, w.h2);
  w.t0 = w.H_hat(0, 0) - bilinear(w.h1, P, w.h1);
  w.c = w.H_hat(1, 1) - bilinear(w.h2, P, w.h2);
  return w;
}

std::vector<BoundaryPoint> boundary_set(const CircularWork& w) {
  if (sgn(w.eta) <= 0) throw InputError("boundary set needs eta > 0");
  // t = u^2 / eta turns the second curve into
  //   (1 + c/eta) u^2 - 2 u0 u + u0^2 - c t0 = 0.
  const Rat A = 1 + w.c / w.eta;
  const Rat quarter_disc = (w.c / w.eta) * (w.t0 * (w.eta + w.c) - w.u0 * w.u0);
  std::vector<QuadScalar> us;
  if (sgn(quarter_disc) == 0) {
    us.push_back(QuadScalar(w.u0 / A));
  } else if (sgn(quarter_disc) > 0) {
    const QuadScalar r = QuadScalar::sqrt(quarter_disc);
    us.push_back((QuadScalar(w.u0) - r) / QuadScalar(A));
    us.push_back((QuadScalar(w.u0) + r) / QuadScalar(A));
  }
  std::vector<BoundaryPoint> out;
  for (const QuadScalar& u : us) {
    const QuadScalar t = u * u / QuadScalar(w.eta);
    // squaring is not sign-faithful: re-check both curves and the t-range
    const QuadScalar du = u - QuadScalar(w.u0);
    if (!is_zero(du * du - QuadScalar(w.c) * (QuadScalar(w.t0) - t))) continue;
    if (quad_sign(t) < 0 || quad_sign(QuadScalar(w.t0) - t) < 0) continue;
    bool dup = false;
    for (const auto& p : out)
      if (p.t == t && p.u == u) dup = true;
    if (dup) continue;
    std::string branch = quad_sign(u) >= 0 ? "u=+sqrt(eta t)" : "u=-sqrt(eta t)";
    branch += quad_sign(du) >= 0 ? ", u=u0+h(t)" : ", u=u0-h(t)";
    out.push_back({t, u, branch});
  }
  return out;
}

namespace {

// H(G(t,u)) = H_hat - t E_00 - u (E_01 + E_10)
QuadMat line_matrix_at(const CircularWork& w, const QuadScalar& t, const QuadScalar& u) {
  QuadMat H = w.H_hat.cast<QuadScalar>();
  H(0, 0) -= t;
  H(0, 1) -= u;
  H(1, 0) -= u;
  return H;
}

std::string witness_text(const QuadScalar& t, const QuadScalar& u) {
  std::ostringstream os;
  os << "(" << t << ", " << u << ")";
  return os.str();
}

std::size_t atoms_at(const CircularWork& w, const QuadScalar& t, const QuadScalar& u) {
  const QuadMat G = circular_G(w, t, u);
  return rank(conic_part(w.blocks, G)) + rank(line_part(w.blocks, G));
}

}  // namespace

SolveReport solve_circular(const MomentSequence& beta, const Rat& a) {
  if (sgn(a) == 0) throw InputError("circular type needs a != 0");
  if (beta.k() < 3) throw InputError("the cubic solvers need k >= 3");
  SolveReport rep;
  const SymMat M = moment_matrix(beta);
  const auto pm = psd_rank(M);
  rep.note("rank_M", pm.rank);
  if (!pm.is_psd) {
    rep.clause = "M not psd";
    return rep;
  }
  if (!check_rg_family(beta, RgKind::circular(a))) {
    rep.clause = "rg relations fail";
    return rep;
  }
  const CircularWork w = compute_circular_work(beta, a);
  const std::size_t k = static_cast<std::size_t>(w.blocks.k);
  rep.note("eta", w.eta);
  rep.note("u0", w.u0);
  rep.note("t0", w.t0);
  rep.note("H2/H22", w.c);

  const SymMat H_min = line_part(w.blocks, w.A_min);
  const std::size_t rank_H_min = rank(H_min);
  const std::size_t rank_H_hat = rank(w.H_hat);
  rep.note("rank_H(A_min)", rank_H_min);
  rep.note("rank_H(A_hat)", rank_H_hat);
  const bool H_min_pd = rank_H_min == k + 1 && is_psd(H_min);
  rep.note("H(A_min) pd", H_min_pd);

  const int es = sgn(w.eta);
  if (es < 0) {
    rep.clause = "eta < 0";
    return rep;
  }
  if (es == 0) {
    const std::size_t r_head = rank(H_min.principal(range(0, k)));
    const std::size_t r_H2 = rank(w.H2);
    const std::size_t r_H2_head = rank(w.H2.principal(range(0, k - 1)));
    if (r_head == k) {
      rep.exists = true;
      rep.clause = "a-i";
    } else if (r_H2_head == r_H2) {
      rep.exists = true;
      rep.clause = "a-ii";
    } else {
      rep.clause = "a: rank conditions fail";
      return rep;
    }
    rep.witness = Witness{QuadScalar(0), QuadScalar(0)};
  } else {
    const auto p2 = psd_rank(w.H2);
    rep.note("rank_H2", p2.rank);
    if (!p2.is_psd) {
      rep.clause = "b: H2 not psd";
      return rep;
    }
    const bool H2_pd = p2.rank == w.H2.rows();
    const auto I = boundary_set(w);
    rep.note("boundary_points", I.size());
    for (std::size_t n = 0; n < I.size(); ++n)
      rep.note("boundary_point_" + std::to_string(n), witness_text(I[n].t, I[n].u) + " " + I[n].branch);
    if (I.size() == 2 && H2_pd) {
      rep.exists = true;
      rep.clause = "b-i";
      // Both points are tried; the one with fewer atoms wins.
      std::optional<std::size_t> chosen, chosen_atoms;
      for (std::size_t n = 0; n < I.size(); ++n) {
        const QuadMat H = line_matrix_at(w, I[n].t, I[n].u);
        if (!solve_hamburger(hankel_entries(H)).exists) continue;
        const std::size_t atoms = atoms_at(w, I[n].t, I[n].u);
        if (!chosen || atoms < *chosen_atoms) {
          chosen = n;
          chosen_atoms = atoms;
        }
      }
      rep.note("witness_confirmed", chosen.has_value());
      const auto& p = I[chosen.value_or(0)];
      rep.witness = Witness{p.t, p.u};
    } else if (I.size() == 1) {
      const QuadMat H = line_matrix_at(w, I[0].t, I[0].u);
      const std::size_t r_full = rank(H), r_head = rank(H.principal(range(0, k)));
      rep.note("rank_H(G) at boundary point", r_full);
      if (r_full != r_head) {
        rep.clause = "b: single boundary point fails the rank condition";
        return rep;
      }
      rep.exists = true;
      rep.clause = "b-ii";
      rep.witness = Witness{I[0].t, I[0].u};
    } else {
      rep.clause = I.size() == 2 ? "b: H2 not pd with two boundary points" : "b: boundary set empty";
      return rep;
    }
  }
  // The measure built at the witness has rank F(G) + rank H(G) atoms, and
  // over the region intersection this count is smallest on the boundary set
  // (or at the origin when eta = 0), so it decides whether rank M suffices.
  // The shortcut "eta = 0 or H(A_min) pd" misses the degenerate corner where
  // H2/H22 = 0 and (t0, u0) lies on u^2 = eta t: there H(G) drops to
  // rank H22 and a rank-M-atomic measure exists although H(A_min) is
  // singular.
  const std::size_t r = pm.rank;
  const std::size_t at_witness = atoms_at(w, rep.witness->t, rep.witness->u);
  rep.note("atoms at witness", at_witness);
  rep.note("eta = 0 or H(A_min) pd", es == 0 || H_min_pd);
  rep.minimal_atoms = at_witness == r ? r : r + 1;
  rep.atom_upper_bound = r + 1;
  return rep;
}

}  // namespace mc
