#include <doctest.h>

#include <random>
#include <vector>

#include "momentcurve/blocks.hpp"
#include "momentcurve/cubic_circular.hpp"
#include "momentcurve/cubic_parabolic.hpp"
#include "support.hpp"

using namespace mc;
using namespace mc::testing;

namespace {

std::vector<CubicInstance> instances(CubicType type, std::uint64_t seed, int count, int k = 3) {
  std::mt19937_64 rng(seed);
  std::vector<CubicInstance> out;
  for (int n = 0; n < count; ++n) out.push_back(random_cubic_instance(rng, type, k));
  return out;
}

// Rational probe values around a reference scale.
std::vector<Rat> probes(const Rat& scale) {
  std::vector<Rat> v;
  const Rat s = sgn(scale) == 0 ? Rat(1) : abs(scale);
  for (int n = -4; n <= 4; ++n) v.push_back(s * rq(n, 3));
  return v;
}

}  // namespace

TEST_SUITE("unit blocks") {
  TEST_CASE("reordering is a permutation of the moment matrix") {
    for (const auto& in : instances(CubicType::Parabolic, 61, 20, 4)) {
      const BlockDecomp b = assemble_blocks(in.beta);
      CHECK(b.n1 == 5);
      CHECK(b.n2 == 7);
      CHECK(b.n1 + b.n2 + b.n3 == monomial_count(4));
      CHECK(reassemble(b) == moment_matrix(in.beta));
      CHECK(b.Mt.is_symmetric());
      CHECK(is_hankel(b.A11));
      CHECK(b.A_min == b.A12 * pinv(b.A22) * b.A12.transpose());
    }
    CHECK_THROWS_AS(assemble_blocks(MomentSequence(2)), InputError);
  }

  TEST_CASE("conic sequence and Hankel entries agree") {
    for (const auto& in : instances(CubicType::Circular, 62, 10)) {
      const BlockDecomp b = assemble_blocks(in.beta);
      const auto v = hankel_entries(b.A11);
      for (int i = 0; i <= 6; ++i) CHECK(v[static_cast<std::size_t>(i)] == in.beta(i, 0));
      // with A11 itself the conic sequence is beta again
      CHECK(conic_sequence(b, in.beta, b.A11) == in.beta);
      CHECK(line_part(b, b.A11).is_zero_matrix());
      CHECK(conic_part(b, b.A11) == b.Mt);
    }
  }

  TEST_CASE("splitting psd data along A_min") {
    for (const auto type : {CubicType::Circular, CubicType::Parabolic}) {
      for (const auto& in : instances(type, 63, 25)) {
        const BlockDecomp b = assemble_blocks(in.beta);
        const SymMat F = conic_part(b, b.A_min), H = line_part(b, b.A_min);
        CHECK(is_psd(F));
        CHECK(is_psd(H));
        CHECK(rank(b.Mt) == rank(F) + rank(H));
      }
    }
  }
}

TEST_SUITE("unit cubic circular") {
  TEST_CASE("conic-part region") {
    // eta > 0 needs more circle atoms than the 2k - 1 conic columns can
    // absorb, so only a minority of instances reach the boundary checks.
    int boundary_hits = 0, n = 0;
    for (const auto& in : instances(CubicType::Circular, 71, 300)) {
      const CircularWork w = compute_circular_work(in.beta, in.a);
      REQUIRE(sgn(w.eta) >= 0);
      if (n++ >= 30 && sgn(w.eta) == 0) continue;
      for (const Rat& t : probes(w.eta))
        for (const Rat& u : probes(w.eta)) {
          const bool expect = sgn(t) >= 0 && sgn(w.eta) >= 0 && t * w.eta >= u * u;
          CHECK(is_psd(conic_part(w.blocks, circular_G(w, t, u))) == expect);
        }
      if (sgn(w.eta) > 0) {
        // on the boundary t eta = u^2 the rank drops by one
        const Rat u = w.eta / 2, t = u * u / w.eta;
        const std::size_t on = rank(conic_part(w.blocks, circular_G(w, t, u)));
        const std::size_t in_ = rank(conic_part(w.blocks, circular_G(w, Rat(t + 1), u)));
        CHECK(is_psd(conic_part(w.blocks, circular_G(w, t, u))));
        CHECK(in_ == on + 1);
        ++boundary_hits;
      }
    }
    CHECK(boundary_hits > 0);
  }

  TEST_CASE("line-part region") {
    for (const auto& in : instances(CubicType::Circular, 72, 30)) {
      const CircularWork w = compute_circular_work(in.beta, in.a);
      REQUIRE(is_psd(w.H_hat));
      CHECK(sgn(w.c) >= 0);
      for (const Rat& t : probes(w.t0))
        for (const Rat& u : probes(w.t0)) {
          const Rat du = u - w.u0;
          const bool expect = t <= w.t0 && du * du <= (w.t0 - t) * w.c;
          CHECK(is_psd(line_part(w.blocks, circular_G(w, t, u))) == expect);
        }
      // exact boundary points u = u0 +- sqrt((t0 - t) c) lie in the region
      const Rat t = w.t0 / 2;
      const Rat r = (w.t0 - t) * w.c;
      if (sgn(r) < 0) continue;
      for (int s : {-1, 1}) {
        const QuadScalar u = QuadScalar(w.u0) + QuadScalar(Rat(s)) * QuadScalar::sqrt(r);
        CHECK(is_psd(line_part(w.blocks, circular_G(w, QuadScalar(t), u))));
      }
    }
  }

  TEST_CASE("conic relations survive in F(A_min)") {
    for (const auto& in : instances(CubicType::Circular, 73, 20)) {
      BlockDecomp b = assemble_blocks(in.beta);
      b.Mt = conic_part(b, b.A_min);
      const SymMat F = reassemble(b);  // F(A_min) in degree-lex order
      const Poly2 c = conic_factor(CubicType::Circular, in.a);
      for (int d = 0; d <= 1; ++d)
        for (int j = 0; j <= d; ++j) CHECK(is_column_relation(F, Poly2::monomial(d - j, j) * c));
    }
  }

  TEST_CASE("every synthesized instance is accepted with a confirmed witness") {
    for (const int k : {3, 4}) {
      for (const auto& in : instances(CubicType::Circular, 74 + k, 60, k)) {
        const SolveReport r = solve_circular(in.beta, in.a);
        REQUIRE(r.exists);
        REQUIRE(r.witness.has_value());
        REQUIRE(r.minimal_atoms.has_value());
        const CircularWork w = compute_circular_work(in.beta, in.a);
        const QuadMat G = circular_G(w, r.witness->t, r.witness->u);
        CHECK(is_psd(conic_part(w.blocks, G)));
        CHECK(is_psd(line_part(w.blocks, G)));
        const std::size_t rk = rank(moment_matrix(in.beta));
        CHECK(*r.minimal_atoms >= rk);
        CHECK(*r.minimal_atoms <= rk + 1);
        CHECK(*r.minimal_atoms <= in.mu.atoms.size());
      }
    }
  }

  TEST_CASE("breaking the cubic relation is detected") {
    std::mt19937_64 rng(76);
    for (const auto& in : instances(CubicType::Circular, 77, 30)) {
      MomentSequence bad = in.beta;
      bad(0, 3) += positive_rational(rng, 5);  // breaks the cubic relation
      const SolveReport r = solve_circular(bad, in.a);
      CHECK_FALSE(r.exists);
    }
  }
}

TEST_SUITE("unit cubic parabolic") {
  TEST_CASE("conic-part region") {
    for (const auto& in : instances(CubicType::Parabolic, 81, 30)) {
      const ParabolicWork w = compute_parabolic_work(in.beta);
      for (const Rat& t : probes(w.eta))
        for (const Rat& u : probes(w.eta)) {
          const bool expect = sgn(t) >= 0 && sgn(u) >= 0 && t * u >= w.eta * w.eta;
          const RegionReport rr = region_membership(w, QuadScalar(t), QuadScalar(u));
          CHECK(rr.in_R1 == expect);
          CHECK(is_psd(conic_part(w.blocks, parabolic_G(w, t, u))) == expect);
        }
    }
  }

  TEST_CASE("line-part region when H22 is positive definite") {
    int seen = 0;
    for (const auto& in : instances(CubicType::Parabolic, 82, 60)) {
      const ParabolicWork w = compute_parabolic_work(in.beta);
      if (!is_pd(w.H22)) continue;
      ++seen;
      for (const Rat& t : probes(w.k11))
        for (const Rat& u : probes(w.k22)) {
          const RegionReport rr = region_membership(w, QuadScalar(t), QuadScalar(u));
          CHECK(is_psd(line_part(w.blocks, parabolic_G(w, t, u))) == rr.in_R2);
        }
    }
    CHECK(seen > 0);
  }

  TEST_CASE("the product t u peaks at the extremal point of R2") {
    int seen = 0;
    for (const auto& in : instances(CubicType::Parabolic, 83, 80)) {
      const ParabolicWork w = compute_parabolic_work(in.beta);
      if (!is_pd(w.H22) || sgn(w.k11) <= 0 || sgn(w.k22) <= 0) continue;
      const QuadScalar root = QuadScalar::sqrt(w.k11 * w.k22);  // sqrt(k11 k22)
      const QuadScalar k12abs(abs(w.k12));
      if (root < k12abs) continue;
      ++seen;
      const QuadScalar bound = (root - k12abs) * (root - k12abs);
      // t* = k11 - |k12| sqrt(k11/k22), u* = k22 - |k12| sqrt(k22/k11)
      const QuadScalar ts = QuadScalar(w.k11) - k12abs * root / QuadScalar(w.k22);
      const QuadScalar us = QuadScalar(w.k22) - k12abs * root / QuadScalar(w.k11);
      const RegionReport at = region_membership(w, ts, us);
      CHECK(at.in_R2);
      CHECK(ts * us == bound);
      for (int i = 0; i <= 8; ++i) {
        const Rat t = w.k11 * rq(i, 8);
        if (t == w.k11) continue;
        const Rat u = w.k22 - w.k12 * w.k12 / (w.k11 - t);  // top of R2 above t
        if (sgn(u) < 0) continue;
        CHECK(region_membership(w, QuadScalar(t), QuadScalar(u)).in_R2);
        CHECK(QuadScalar(t * u) <= bound);
      }
    }
    CHECK(seen > 0);
  }

  TEST_CASE("every synthesized instance is accepted inside both regions") {
    for (const int k : {3, 4}) {
      for (const auto& in : instances(CubicType::Parabolic, 84 + k, 60, k)) {
        const SolveReport r = solve_parabolic_cubic(in.beta);
        REQUIRE(r.exists);
        REQUIRE(r.witness.has_value());
        const ParabolicWork w = compute_parabolic_work(in.beta);
        const QuadMat G = parabolic_G(w, r.witness->t, r.witness->u);
        CHECK(is_psd(conic_part(w.blocks, G)));
        CHECK(is_psd(line_part(w.blocks, G)));
        if (r.clause == "c-ii") {
          const RegionReport rr = region_membership(w, r.witness->t, r.witness->u);
          CHECK(rr.in_R1);
          CHECK(rr.in_R2);
        }
        const std::size_t rk = rank(moment_matrix(in.beta));
        REQUIRE(r.minimal_atoms.has_value());
        CHECK(*r.minimal_atoms >= rk);
        CHECK(*r.minimal_atoms <= in.mu.atoms.size());
      }
    }
  }

  TEST_CASE("breaking the cubic relation is detected") {
    std::mt19937_64 rng(86);
    for (const auto& in : instances(CubicType::Parabolic, 87, 30)) {
      MomentSequence bad = in.beta;
      bad(1, 1) += positive_rational(rng, 5);
      const SolveReport r = solve_parabolic_cubic(bad);
      CHECK_FALSE(r.exists);
    }
  }
}
