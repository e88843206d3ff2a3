#include <doctest.h>

#include <random>

#include "momentcurve/conics.hpp"
#include "momentcurve/measures.hpp"
#include "momentcurve/univariate.hpp"
#include "support.hpp"

using namespace mc;
using namespace mc::testing;

TEST_SUITE("unit conics") {
  TEST_CASE("the circle normalizer lands on the unit circle") {
    std::mt19937_64 rng(51);
    for (int n = 0; n < 40; ++n) {
      const Rat a = random_rational(rng, 7, false);
      const AffineMap f = circle_normalizer(a);
      const auto [x, y] = random_circle_point(rng, a);
      const auto [X, Y] = f.apply(x, y);
      CHECK(X * X + Y * Y == 1);
    }
    CHECK_THROWS_AS(circle_normalizer(Rat(0)), InputError);
  }

  TEST_CASE("measures on a circle are accepted with rank many atoms") {
    std::mt19937_64 rng(52);
    for (int n = 0; n < 40; ++n) {
      const Rat a = random_rational(rng, 5, false);
      const int k = 2 + static_cast<int>(rng() % 2);
      AtomicMeasure mu;
      const int atoms = 1 + static_cast<int>(rng() % 7);
      for (int i = 0; i < atoms; ++i) add_atom(mu, random_circle_point(rng, a), positive_rational(rng, 9));
      const MomentSequence unit = to_unit_circle(moments_of(mu, k), a);
      CHECK(circle_relations_hold(unit));
      const SolveReport r = solve_circle(unit);
      CHECK(r.exists);
      REQUIRE(r.minimal_atoms.has_value());
      CHECK(*r.minimal_atoms == rank(moment_matrix(unit)));
      CHECK(*r.minimal_atoms <= mu.atoms.size());
    }
  }

  TEST_CASE("measures on the parabola are accepted") {
    std::mt19937_64 rng(53);
    for (int n = 0; n < 40; ++n) {
      const int k = 2 + static_cast<int>(rng() % 2);
      AtomicMeasure mu;
      const int atoms = 1 + static_cast<int>(rng() % 7);
      for (int i = 0; i < atoms; ++i) add_atom(mu, random_parabola_point(rng), positive_rational(rng, 9));
      const MomentSequence beta = moments_of(mu, k);
      CHECK(parabola_relations_hold(beta));
      const SolveReport r = solve_parabola(beta);
      CHECK(r.exists);
      // the parabola pulls back to the line through y, so gamma has the atoms' y
      // values as support
      CHECK(solve_hamburger(gamma_of(beta)).exists);
      REQUIRE(r.minimal_atoms.has_value());
      CHECK(*r.minimal_atoms == rank(moment_matrix(beta)));
    }
  }

  TEST_CASE("atoms off the conic break the relations") {
    std::mt19937_64 rng(54);
    for (int n = 0; n < 20; ++n) {
      AtomicMeasure mu;
      for (int i = 0; i < 4; ++i) add_atom(mu, random_parabola_point(rng), positive_rational(rng, 9));
      mu.atoms.push_back(Atom::exact(rq(5), rq(1), rq(1)));  // 5 != 1^2
      const MomentSequence beta = moments_of(mu, 2);
      CHECK_FALSE(parabola_relations_hold(beta));
      CHECK_FALSE(solve_parabola(beta).exists);
      CHECK_FALSE(circle_relations_hold(to_unit_circle(beta, rq(1))));
    }
  }
}
