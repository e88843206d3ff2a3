#include "momentcurve/upoly.hpp"

namespace mc {

namespace {

// A rational upper bound for |x|.
Rat abs_upper(const Rat& x) { return abs(x); }
Rat abs_upper(const QuadScalar& x) {
  if (x.is_rational()) return abs(x.a());
  Int r;
  Rat D = x.D();
  Int c = D.get_num() / D.get_den() + 1;
  mpz_sqrt(r.get_mpz_t(), c.get_mpz_t());
  return abs(x.a()) + abs(x.b()) * Rat(r + 1);
}

template <class F>
std::vector<UPoly<F>> sturm_chain(const UPoly<F>& p) {
  std::vector<UPoly<F>> s{p, p.derivative()};
  while (!s.back().is_zero()) {
    UPoly<F> r = -(s[s.size() - 2].rem(s.back()));
    if (r.is_zero()) break;
    s.push_back(r);
  }
  if (s.back().is_zero()) s.pop_back();
  return s;
}

template <class F>
int sign_changes(const std::vector<UPoly<F>>& chain, const Rat& x) {
  int changes = 0, prev = 0;
  F fx(x);
  for (const auto& q : chain) {
    int s = sign_of(q.eval(fx));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

template <class F>
std::vector<RootInterval> isolate_real_roots(const UPoly<F>& p_in) {
  std::vector<RootInterval> out;
  if (p_in.degree() <= 0) return out;
  // square-free part keeps the chain well behaved
  UPoly<F> g = gcd(p_in, p_in.derivative());
  UPoly<F> p = p_in;
  if (g.degree() > 0) {
    UPoly<F> q, r;
    p_in.divmod(g, q, r);
    p = q;
  }
  if (p.degree() <= 0) return out;
  // Cauchy bound
  Rat lead_lower = 0;
  {
    // need a positive lower bound for |lead|
    const F& l = p.lead();
    if constexpr (std::is_same_v<F, Rat>) {
      lead_lower = abs(l);
    } else {
      // |a + b sqrt D| = |norm| / |a - b sqrt D|
      Rat n = abs(l.norm());
      lead_lower = l.is_rational() ? Rat(abs(l.a())) : Rat(n / abs_upper(l.conjugate()));
    }
  }
  Rat B = 1;
  for (int i = 0; i < p.degree(); ++i) {
    Rat t = abs_upper(p[static_cast<std::size_t>(i)]) / lead_lower;
    if (t > B - 1) B = t + 1;
  }
  B += 1;
  auto chain = sturm_chain(p);
  struct Job {
    Rat lo, hi;
    int vlo, vhi;
  };
  std::vector<Job> stack{{-B, B, sign_changes(chain, -B), sign_changes(chain, B)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    const int n = j.vlo - j.vhi;
    if (n <= 0) continue;
    if (n == 1) {
      out.push_back({j.lo, j.hi, false});
      continue;
    }
    Rat mid = (j.lo + j.hi) / 2;
    if (is_zero(p.eval(F(mid)))) {
      out.push_back({mid, mid, true});
      // split around the root at points that are not roots themselves
      Rat d = (j.hi - j.lo) / 4;
      for (;;) {
        Rat a = mid - d, b = mid + d;
        if (!is_zero(p.eval(F(a))) && !is_zero(p.eval(F(b))) && sign_changes(chain, a) - sign_changes(chain, b) == 1) break;
        d /= 2;
      }
      stack.push_back({j.lo, mid - d, j.vlo, sign_changes(chain, mid - d)});
      stack.push_back({mid + d, j.hi, sign_changes(chain, mid + d), j.vhi});
      continue;
    }
    int vm = sign_changes(chain, mid);
    stack.push_back({j.lo, mid, j.vlo, vm});
    stack.push_back({mid, j.hi, vm, j.vhi});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.hi < b.hi; });
  return out;
}

template <class F>
Real refine_root(const UPoly<F>& p_in, RootInterval iv, int bits) {
  if (iv.exact) return to_real(iv.lo);
  UPoly<F> g = gcd(p_in, p_in.derivative());
  UPoly<F> p = p_in;
  if (g.degree() > 0) {
    UPoly<F> q, r;
    p_in.divmod(g, q, r);
    p = q;
  }
  // a simple root in (lo, hi]: the sign flips across it
  int shi = sign_of(p.eval(F(iv.hi)));
  if (shi == 0) return to_real(iv.hi);
  Rat scale = 1;
  {
    Rat m = abs(iv.hi) > abs(iv.lo) ? abs(iv.hi) : abs(iv.lo);
    if (m > 1) scale = m;
  }
  Rat tol = scale;
  mpq_div_2exp(tol.get_mpq_t(), tol.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  while (iv.hi - iv.lo > tol) {
    Rat mid = (iv.lo + iv.hi) / 2;
    int s = sign_of(p.eval(F(mid)));
    if (s == 0) return to_real(mid);
    if (s == shi)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
  return to_real((iv.lo + iv.hi) / 2);
}

template <class F>
std::vector<Real> real_roots(const UPoly<F>& p) {
  std::vector<Real> r;
  for (const auto& iv : isolate_real_roots(p)) r.push_back(refine_root(p, iv));
  return r;
}

std::vector<Rat> rational_roots(const UPoly<Rat>& p_in) {
  std::vector<Rat> out;
  if (p_in.degree() <= 0) return out;
  // integer coefficients: a rational root m/n has n | lead, so lead*root is an integer
  Int den = 1;
  for (const auto& c : p_in.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Rat> ic;
  for (const auto& c : p_in.coeffs()) ic.push_back(c * Rat(den));
  UPoly<Rat> p(ic);
  Rat lead = abs(p.lead());
  for (auto iv : isolate_real_roots(p)) {
    if (iv.exact) {
      out.push_back(iv.lo);
      continue;
    }
    UPoly<Rat> g = gcd(p, p.derivative());
    UPoly<Rat> sf = p;
    if (g.degree() > 0) {
      UPoly<Rat> q, r;
      p.divmod(g, q, r);
      sf = q;
    }
    int shi = sign_of(sf.eval(iv.hi));
    if (shi == 0) {
      out.push_back(iv.hi);
      continue;
    }
    while ((iv.hi - iv.lo) * lead > Rat(1, 4)) {
      Rat mid = (iv.lo + iv.hi) / 2;
      int s = sign_of(sf.eval(mid));
      if (s == 0) {
        iv.lo = iv.hi = mid;
        break;
      }
      if (s == shi) iv.hi = mid;
      else iv.lo = mid;
    }
    if (iv.lo == iv.hi) {
      out.push_back(iv.lo);
      continue;
    }
    // at most one candidate m / lead in (lo, hi]
    Rat scaled = iv.hi * lead;
    Int m;
    mpz_fdiv_q(m.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    Rat r = Rat(m) / lead;
    if (r > iv.lo && is_zero(p.eval(r))) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template std::vector<RootInterval> isolate_real_roots(const UPoly<Rat>&);
template std::vector<RootInterval> isolate_real_roots(const UPoly<QuadScalar>&);
template Real refine_root(const UPoly<Rat>&, RootInterval, int);
template Real refine_root(const UPoly<QuadScalar>&, RootInterval, int);
template std::vector<Real> real_roots(const UPoly<Rat>&);
template std::vector<Real> real_roots(const UPoly<QuadScalar>&);

}  // namespace mc
