#pragma once

// Univariate polynomials over Rat or QuadScalar with exact real-root
// isolation (Sturm sequences, rational interval endpoints).

#include <vector>

#include "momentcurve/exactmath.hpp"
#include "momentcurve/numeric.hpp"

namespace mc {

template <class F>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const F& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<F>& coeffs() const { return c_; }
  const F& lead() const { return c_.back(); }

  F eval(const F& x) const {
    F s(0);
    for (std::size_t i = c_.size(); i-- > 0;) s = s * x + c_[i];
    return s;
  }

  UPoly derivative() const {
    std::vector<F> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(F(Rat(static_cast<long>(i))) * c_[i]);
    return UPoly(d);
  }

  UPoly monic() const {
    if (c_.empty()) return *this;
    std::vector<F> m = c_;
    F l = lead();
    for (auto& v : m) v /= l;
    return UPoly(m);
  }

  // this = q * d + r
  void divmod(const UPoly& d, UPoly& q, UPoly& r) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<F> rem = c_;
    std::vector<F> quo(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0, F(0));
    for (std::size_t n = quo.size(); n-- > 0;) {
      F f = rem[n + d.c_.size() - 1] / d.lead();
      quo[n] = f;
      for (std::size_t i = 0; i < d.c_.size(); ++i) rem[n + i] -= f * d.c_[i];
    }
    q = UPoly(quo);
    r = UPoly(rem);
  }

  UPoly rem(const UPoly& d) const {
    UPoly q, r;
    divmod(d, q, r);
    return r;
  }

  friend UPoly operator-(const UPoly& p) {
    std::vector<F> c = p.c_;
    for (auto& v : c) v = -v;
    return UPoly(c);
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(c);
  }

 private:
  std::vector<F> c_;
  void trim() {
    while (!c_.empty() && mc::is_zero(c_.back())) c_.pop_back();
  }
};

template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    UPoly<F> r = a.rem(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Exact real root isolation.  Each root lies in (lo, hi], or equals lo when
// `exact` is set (then lo == hi).
struct RootInterval {
  Rat lo, hi;
  bool exact = false;
};

template <class F>
std::vector<RootInterval> isolate_real_roots(const UPoly<F>& p);

// Refines an isolating interval to width <= 2^-bits * max(1, |x|) and
// returns its midpoint in float128.
template <class F>
Real refine_root(const UPoly<F>& p, RootInterval iv, int bits = 112);

// All real roots, ascending, in float128.
template <class F>
std::vector<Real> real_roots(const UPoly<F>& p);

// Exact rational roots of a rational polynomial, ascending, distinct.
std::vector<Rat> rational_roots(const UPoly<Rat>& p);

}  // namespace mc
