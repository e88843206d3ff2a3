#include <doctest.h>

#include <algorithm>
#include <random>

#include "momentcurve/numeric.hpp"
#include "momentcurve/univariate.hpp"
#include "momentcurve/upoly.hpp"
#include "support.hpp"

using namespace mc;
using namespace mc::testing;

namespace {

// v_i = sum w x^i for i = 0..2k.
HankelVec<Rat> power_sums(const std::vector<std::pair<Rat, Rat>>& xw, int k) {
  HankelVec<Rat> v(2 * k + 1, Rat(0));
  for (const auto& [x, w] : xw) {
    Rat p = w;
    for (auto& vi : v) {
      vi += p;
      p *= x;
    }
  }
  return v;
}

std::vector<std::pair<Rat, Rat>> random_points(std::mt19937_64& rng, int n) {
  std::vector<std::pair<Rat, Rat>> xw;
  while (static_cast<int>(xw.size()) < n) {
    const Rat x = random_rational(rng, 9);
    if (std::none_of(xw.begin(), xw.end(), [&](const auto& p) { return p.first == x; }))
      xw.push_back({x, positive_rational(rng, 9)});
  }
  return xw;
}

UPoly<Rat> from_roots(const std::vector<Rat>& roots) {
  UPoly<Rat> p(std::vector<Rat>{Rat(1)});
  for (const auto& r : roots) p = p * UPoly<Rat>(std::vector<Rat>{-r, Rat(1)});
  return p;
}

}  // namespace

TEST_SUITE("unit univariate") {
  TEST_CASE("polynomial division and gcd") {
    const UPoly<Rat> a = from_roots({rq(1), rq(2), rq(-3)}), b = from_roots({rq(2), rq(5)});
    UPoly<Rat> q, r;
    a.divmod(b, q, r);
    CHECK(r.degree() < b.degree());
    const UPoly<Rat> back = q * b;
    for (int x = -3; x <= 3; ++x) CHECK(back.eval(Rat(x)) + r.eval(Rat(x)) == a.eval(Rat(x)));
    const UPoly<Rat> g = gcd(a, b);
    CHECK(g.degree() == 1);
    CHECK(g.eval(Rat(2)) == 0);
    CHECK(a.derivative().degree() == 2);
    CHECK(a.monic().lead() == 1);
    CHECK_THROWS(a.rem(UPoly<Rat>()));
  }

  TEST_CASE("real and rational roots") {
    std::mt19937_64 rng(41);
    for (int n = 0; n < 30; ++n) {
      std::vector<Rat> roots;
      for (int i = 0; i < 4; ++i) roots.push_back(random_rational(rng, 12));
      const UPoly<Rat> p = from_roots(roots);
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      CHECK(rational_roots(p) == roots);
      const auto rr = real_roots(p);
      REQUIRE(rr.size() == roots.size());
      for (std::size_t i = 0; i < roots.size(); ++i) CHECK(abs(rr[i] - to_real(roots[i])) < Real(1e-25));
    }
    // x^2 - 2 has irrational roots only; x^2 + 1 has none
    const UPoly<Rat> s(std::vector<Rat>{rq(-2), rq(0), rq(1)});
    CHECK(rational_roots(s).empty());
    const auto r2 = real_roots(s);
    REQUIRE(r2.size() == 2);
    CHECK(abs(r2[1] - sqrt(Real(2))) < Real(1e-30));
    CHECK(real_roots(UPoly<Rat>(std::vector<Rat>{rq(1), rq(0), rq(1)})).empty());
  }

  TEST_CASE("roots over a quadratic field") {
    // (x - sqrt 3)(x + 1)
    const QuadScalar r3 = QuadScalar::sqrt(rq(3));
    const UPoly<QuadScalar> p(std::vector<QuadScalar>{-r3, QuadScalar(1) - r3, QuadScalar(1)});
    const auto rr = real_roots(p);
    REQUIRE(rr.size() == 2);
    CHECK(abs(rr[0] + 1) < Real(1e-30));
    CHECK(abs(rr[1] - sqrt(Real(3))) < Real(1e-30));
  }

  TEST_CASE("Hamburger on atomic data") {
    std::mt19937_64 rng(42);
    for (int n = 0; n < 60; ++n) {
      const int k = 2 + static_cast<int>(rng() % 3), atoms = 1 + static_cast<int>(rng() % 6);
      const auto v = power_sums(random_points(rng, atoms), k);
      const std::size_t expect = std::min<std::size_t>(atoms, k + 1);
      CHECK(rank_of_v(v) == expect);
      const SolveReport r = solve_hamburger(v);
      CHECK(r.exists);
      if (atoms <= k) {
        REQUIRE(r.minimal_atoms.has_value());
        CHECK(*r.minimal_atoms == static_cast<std::size_t>(atoms));
        CHECK(prg_check(v));
      }
      // lowering the top moment below what the data allow breaks positivity
      auto bad = v;
      bad.back() -= bad.back() + 1;
      CHECK_FALSE(solve_hamburger(bad).exists);
    }
  }

  TEST_CASE("completion interval endpoints") {
    std::mt19937_64 rng(43);
    for (int n = 0; n < 30; ++n) {
      // Degree-4 Hankel data from 5 atoms with v_3 held back as the unknown x
      // in position (1, 2) of the 3 x 3 matrix on {1, X^2, X}.
      const auto v = power_sums(random_points(rng, 5), 2);
      SymMat A1(1, 1);
      A1(0, 0) = v[0];
      const auto rep = completion_interval(A1, {v[2]}, {v[1]}, v[4], v[2]);
      REQUIRE(rep.x_minus <= rep.x_plus);
      const QuadScalar mid = (rep.x_minus + rep.x_plus) / QuadScalar(2);
      auto at = [&](const QuadScalar& x) { return completion_matrix(A1, {v[2]}, {v[1]}, v[4], v[2], x); };
      CHECK(is_psd(at(rep.x_minus)));
      CHECK(is_psd(at(rep.x_plus)));
      CHECK(is_psd(at(mid)));
      CHECK(rank(at(rep.x_minus)) == rep.rank_at_boundary);
      if (!rep.collapse) {
        CHECK(rank(at(mid)) == rep.rank_interior);
        CHECK_FALSE(is_psd(at(rep.x_plus + QuadScalar(1))));
        CHECK_FALSE(is_psd(at(rep.x_minus - QuadScalar(1))));
      }
      // the true value v_3 lies in the interval
      CHECK(QuadScalar(v[3]) >= rep.x_minus);
      CHECK(QuadScalar(v[3]) <= rep.x_plus);
    }
  }

  TEST_CASE("atom extraction reproduces the data") {
    std::mt19937_64 rng(44);
    for (int n = 0; n < 80; ++n) {
      const int k = 2 + static_cast<int>(rng() % 3), atoms = 1 + static_cast<int>(rng() % 7);
      const auto v = power_sums(random_points(rng, atoms), k);
      const auto got = extract_atoms_hankel(v, 1e-9);
      CHECK(got.size() == rank_of_v(v));
      for (std::size_t i = 0; i < v.size(); ++i) {
        Real s = 0;
        for (const auto& a : got) s += a.w * pow(a.x, static_cast<int>(i));
        CHECK(abs(s - to_real(v[i])) <= Real(1e-9) * (1 + abs(to_real(v[i]))));
      }
      for (const auto& a : got) CHECK(a.w > 0);
    }
  }

  TEST_CASE("solve_dense") {
    const auto x = solve_dense({{2, 1}, {1, 3}}, {3, 5});
    CHECK(abs(x[0] - Real(4) / 5) < Real(1e-30));
    CHECK(abs(x[1] - Real(7) / 5) < Real(1e-30));
    CHECK_THROWS_AS(solve_dense({{1, 2}, {2, 4}}, {1, 2}), NumericFailure);
  }
}
