// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "momentcurve/blocks.hpp"
#include "momentcurve/conics.hpp"
#include "momentcurve/cubic_circular.hpp"
#include "momentcurve/cubic_parabolic.hpp"
#include "momentcurve/json_io.hpp"
#include "momentcurve/measures.hpp"
#include "momentcurve/univariate.hpp"
#include "support.hpp"

using namespace mc;
using namespace mc::testing;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

MomentSequence load(const std::string& name) {
  std::ifstream f(std::string(MC_TEST_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return moments_from_json(parse_json_text(ss.str(), name)).beta;
}

struct Result {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

Result example5() {
  Result r;
  const auto t0 = Clock::now();
  const MomentSequence beta = load("example5.json");
  const CircularWork w = compute_circular_work(beta, Rat(-2));
  if (w.eta != rq(4608, 55783)) r.fail("eta = " + to_string(w.eta));
  const Rat d = det(w.H2);
  if (w.H2.rows() != 3 || sgn(d) >= 0) r.fail("det H2 = " + to_string(d) + " is not a negative 3x3 determinant");
  if (is_psd(w.H2)) r.fail("H2 reported psd");
  const SolveReport rep = solve_circular(beta, Rat(-2));
  if (rep.exists || rep.clause != "b: H2 not psd") r.fail("verdict " + rep.clause);
  const double secs = seconds_since(t0);
  if (secs >= 1.0) r.fail("took " + std::to_string(secs) + " s");
  if (r.pass) r.detail << "eta = 4608/55783, det H2 = " << to_string(d) << ", " << secs << " s";
  return r;
}

Result example6() {
  Result r;
  const auto t0 = Clock::now();
  const MomentSequence beta = load("example6.json");
  const ParabolicWork w = compute_parabolic_work(beta);
  if (w.eta != rq(-72, 923)) r.fail("eta = " + to_string(w.eta));
  if (w.k11 != Rat("6050329/48143098510") || w.k12 != rq(3, 95) || w.k22 != rq(4941414, 87685))
    r.fail("K = [" + to_string(w.k11) + ", " + to_string(w.k12) + "; " + to_string(w.k22) + "]");
  const QuadScalar root = QuadScalar::sqrt(w.k11 * w.k22);
  const QuadScalar value = (root - QuadScalar(w.k12)) * (root - QuadScalar(w.k12)) - QuadScalar(w.eta * w.eta);
  if (quad_sign(value) >= 0) r.fail("(sqrt(k11 k22) - k12)^2 - eta^2 is not negative");
  const SolveReport rep = solve_parabolic_cubic(beta);
  if (rep.exists || rep.clause != "c-ii") r.fail("verdict " + rep.clause);
  const double secs = seconds_since(t0);
  if (secs >= 1.0) r.fail("took " + std::to_string(secs) + " s");
  if (r.pass)
    r.detail << "eta = -72/923, K exact, value ~ " << value.to_long_double() << ", " << secs << " s";
  return r;
}

struct SweepItem {
  CubicInstance inst;
  SolveReport report;
};

std::vector<SweepItem> sweep_items;
double sweep_seconds = 0;

Result forward_sweep() {
  Result r;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t pure = 0, total = 0;
  for (CubicType type : {CubicType::Circular, CubicType::Parabolic})
    for (int k : {3, 4})
      for (int n = 0; n < 250; ++n) {
        SweepItem item{random_cubic_instance(rng, type, k), {}};
        const auto& in = item.inst;
        item.report = type == CubicType::Circular ? solve_circular(in.beta, in.a) : solve_parabolic_cubic(in.beta);
        ++total;
        const std::size_t rk = rank(moment_matrix(in.beta));
        std::ostringstream id;
        id << (type == CubicType::Circular ? "circular" : "parabolic") << " k=" << k << " #" << n;
        if (!item.report.exists) {
          r.fail(id.str() + ": exists=false (" + item.report.clause + ")");
        } else if (!item.report.minimal_atoms || *item.report.minimal_atoms > rk + 1) {
          r.fail(id.str() + ": minimal_atoms above rank + 1");
        } else if (*item.report.minimal_atoms > in.mu.atoms.size()) {
          r.fail(id.str() + ": minimal_atoms above the size of the generating measure");
        } else if (rk == static_cast<std::size_t>(3 * k)) {
          ++pure;
          if (*item.report.minimal_atoms != rk) r.fail(id.str() + ": pure instance not rank-atomic");
        }
        sweep_items.push_back(std::move(item));
      }
  sweep_seconds = seconds_since(t0);
  if (sweep_seconds >= 300) r.fail("took " + std::to_string(sweep_seconds) + " s");
  if (r.pass) r.detail << total << " instances, " << pure << " pure, " << sweep_seconds << " s";
  return r;
}

Result completion_suite() {
  Result r;
  std::mt19937_64 rng(777);
  std::size_t probes = 0;
  for (int inst = 0; inst < 200 && r.pass; ++inst) {
    const std::size_t n = inst % 2 ? 4 : 5, m = n - 2;
    // Gram matrix of random vectors, rank between 1 and n
    const std::size_t dim = 1 + rng() % n;
    Matrix<Rat> V(n, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < dim; ++j) V(i, j) = random_rational(rng, 4);
    const SymMat G = V * V.transpose();
    SymMat A1(m, m);
    Vec<Rat> a(m), b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) A1(i, j) = G(i, j);
      a[i] = G(i, m);
      b[i] = G(i, m + 1);
    }
    const Rat alpha = G(m, m), gamma = G(m + 1, m + 1);
    std::vector<std::size_t> i2(m + 1), i3(m + 1);
    for (std::size_t i = 0; i < m; ++i) i2[i] = i3[i] = i;
    i2[m] = m;
    i3[m] = m + 1;
    const std::size_t rmax = std::max(rank(G.principal(i2)), rank(G.principal(i3)));
    const CompletionReport c = completion_interval(A1, a, b, alpha, gamma);
    std::ostringstream id;
    id << "instance " << inst << ": ";
    for (const QuadScalar& end : {c.x_minus, c.x_plus}) {
      const QuadMat E = completion_matrix(A1, a, b, alpha, gamma, end);
      const PsdReport<QuadScalar> pr = psd_rank(E);
      if (!pr.is_psd || pr.rank != rmax || c.rank_at_boundary != rmax)
        r.fail(id.str() + "endpoint rank " + std::to_string(pr.rank) + " vs " + std::to_string(rmax));
    }
    const long double lo = c.x_minus.to_long_double(), hi = c.x_plus.to_long_double();
    const long double span = std::max<long double>(hi - lo, 1);
    for (int p = 0; p < 20; ++p) {
      // probes spread over [lo - span, hi + span]
      const long long steps = 1000;
      const long long pos = static_cast<long long>(rng() % (3 * steps + 1)) - steps;
      Rat x = Rat(static_cast<double>(lo)) + Rat(static_cast<double>(span)) * rq(pos, steps);
      x.canonicalize();
      const QuadScalar xq(x);
      const bool inside = xq >= c.x_minus && xq <= c.x_plus;
      const SymMat Ax = completion_matrix(A1, a, b, alpha, gamma, x);
      const PsdReport<Rat> pr = psd_rank(Ax);
      ++probes;
      if (pr.is_psd != inside) r.fail(id.str() + "psd verdict disagrees with the interval at " + to_string(x));
      const bool strict = xq > c.x_minus && xq < c.x_plus;
      if (strict && (pr.rank != rmax + 1 || c.rank_interior != rmax + 1))
        r.fail(id.str() + "interior rank " + std::to_string(pr.rank) + " vs " + std::to_string(rmax + 1));
    }
  }
  if (r.pass) r.detail << "200 instances, " << probes << " probes";
  return r;
}

Result hamburger_suite() {
  Result r;
  std::mt19937_64 rng(4242);
  std::size_t atomic = 0, accepted = 0;
  for (int n = 0; n < 1000; ++n) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const std::size_t atoms = 1 + rng() % static_cast<std::size_t>(k + 2);
    std::vector<Rat> v(static_cast<std::size_t>(2 * k + 1), Rat(0));
    for (std::size_t a = 0; a < atoms; ++a) {
      const Rat x = random_rational(rng, 6), w = positive_rational(rng, 9);
      Rat p = w;
      for (auto& vi : v) {
        vi += p;
        p *= x;
      }
    }
    const bool perturbed = n % 2 == 1;
    if (perturbed) {
      const std::size_t i = rng() % v.size();
      v[i] += random_rational(rng, 5, false) / 7;
    }
    const SolveReport rep = solve_hamburger(v);
    const bool prg = prg_check(v);
    if (rep.exists != prg) r.fail("vector #" + std::to_string(n) + ": solver and prg check disagree");
    if (!perturbed) {
      ++atomic;
      if (!rep.exists || !rep.minimal_atoms || *rep.minimal_atoms != rank_of_v(v))
        r.fail("vector #" + std::to_string(n) + ": atomic vector not accepted with rank v atoms");
    } else if (rep.exists) {
      ++accepted;
    }
  }
  if (r.pass) r.detail << "1000 vectors (" << atomic << " atomic, " << accepted << " perturbed still solvable)";
  return r;
}

Result decomposition_suite() {
  Result r;
  std::size_t checked = 0;
  for (const auto& item : sweep_items) {
    const auto& in = item.inst;
    const BlockDecomp b = assemble_blocks(in.beta);
    const SymMat F = conic_part(b, b.A_min), H = line_part(b, b.A_min);
    if (!is_psd(F)) r.fail("F(A_min) not psd");
    if (!is_psd(H)) r.fail("H(A_min) not psd");
    BlockDecomp fb = b;
    fb.Mt = F;
    const SymMat Fdeg = reassemble(fb);
    const Poly2 c = conic_factor(in.type, in.a);
    for (int d = 0; d <= b.k - 2; ++d)
      for (int j = 0; j <= d; ++j)
        if (!is_column_relation(Fdeg, Poly2::monomial(d - j, j) * c)) r.fail("conic relation fails in F(A_min)");
    if (rank(b.Mt) != rank(F) + rank(H)) r.fail("rank M is not rank F(A_min) + rank H(A_min)");
    ++checked;
    if (!r.pass) break;
  }
  if (r.pass) r.detail << checked << " synthesized instances";
  return r;
}

Result canonicalization_suite() {
  Result r;
  std::mt19937_64 rng(99);
  std::size_t irrational = 0;
  for (int t = 0; t <= static_cast<int>(CurveTag::Mixed) && r.pass; ++t) {
    const CurveTag tag = static_cast<CurveTag>(t);
    for (int n = 0; n < 50; ++n) {
      const CanonicalForm form = random_canonical_form(rng, tag);
      const AtomicMeasure mu = random_curve_measure(rng, form, 4, 6);
      const MomentSequence base = synthesize(form, mu, 3);
      const AffineMap phi = random_invertible_map(rng, 4);
      const MomentSequence beta = pushforward(base, phi);
      const Poly2 p = transform_relation(form.relation(), phi);
      std::ostringstream id;
      id << tag_name(tag) << " #" << n << ": ";
      try {
        const CanonResult c = canonicalize(beta, p);
        if (c.form.tag != tag) {
          r.fail(id.str() + "recovered " + c.form.str());
          break;
        }
        const bool ok = c.rational ? satisfies_relation(moment_matrix(c.beta), c.form.relation_terms())
                                   : satisfies_relation(moment_matrix(c.beta_q), c.form.relation_terms());
        if (!c.rational) ++irrational;
        if (!ok) {
          r.fail(id.str() + "canonical relation fails on the image");
          break;
        }
      } catch (const std::exception& e) {
        r.fail(id.str() + e.what());
        break;
      }
    }
  }
  if (r.pass) r.detail << "8 forms x 50 maps, " << irrational << " needed a square root scaling";
  return r;
}

Result extraction_suite() {
  Result r;
  std::size_t ok = 0, failed = 0, tried = 0;
  for (const auto& item : sweep_items) {
    if (!item.report.exists) continue;
    ++tried;
    const auto& in = item.inst;
    try {
      const AtomicMeasure mu = extract(in.beta, in.type, in.a, item.report, 1e-8);
      if (!verify(in.beta, mu, 1e-8)) {
        r.fail("extract returned a measure that fails verification");
        break;
      }
      if (mu.atoms.size() != *item.report.minimal_atoms) {
        r.fail("extracted " + std::to_string(mu.atoms.size()) + " atoms, minimal is " +
               std::to_string(*item.report.minimal_atoms));
        break;
      }
      if (item.report.atom_upper_bound && mu.atoms.size() > *item.report.atom_upper_bound) {
        r.fail("extracted more atoms than the upper bound");
        break;
      }
      ++ok;
    } catch (const NumericFailure&) {
      ++failed;
    }
  }
  const double rate = tried ? static_cast<double>(ok) / static_cast<double>(tried) : 0;
  if (rate < 0.95) r.fail("success rate " + std::to_string(rate));
  r.detail << (r.pass ? "" : "; ") << ok << "/" << tried << " verified at 1e-8, " << failed
           << " explicit numeric failures";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"1 circular worked example", example5},
      {"2 parabolic worked example", example6},
      {"3 forward soundness sweep", forward_sweep},
      {"4 one-entry completion interval", completion_suite},
      {"5 Hamburger solver vs recursive generation", hamburger_suite},
      {"6 line/conic decomposition of A_min", decomposition_suite},
      {"7 canonical form round trip", canonicalization_suite},
      {"8 measure extraction", extraction_suite},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Result res;
    try {
      res = run();
    } catch (const std::exception& e) {
      res.fail(std::string("exception: ") + e.what());
    }
    all = all && res.pass;
    std::cout << "criterion " << name << ": " << (res.pass ? "PASS" : "FAIL") << " (" << res.detail.str() << ")"
              << std::endl;
  }
  return all ? 0 : 1;
}
