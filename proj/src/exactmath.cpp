#include "momentcurve/exactmath.hpp"

#include <cctype>
#include <sstream>

#include "momentcurve/numeric.hpp"

namespace mc {

namespace {

// Trial division bound for square-factor stripping of radicands.  Any square
// factor left behind is harmless: fields are compared through D1*D2 being a
// perfect square, which is exact.
constexpr unsigned long kTrialBound = 50000;

bool is_int_square(const Int& n, Int* root) {
  if (sgn(n) < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
  return true;
}

Rat parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
  std::string digits;
  long frac = 0;
  bool seen_dot = false, any_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_dot) ++frac;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("not a number: '" + s + "'");
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::size_t used = 0;
    try {
      exp10 = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in '" + s + "'");
    }
    pos += used;
  }
  if (pos != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
  Int num(digits, 10);
  long shift = exp10 - frac;
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rat r = shift < 0 ? Rat(num, p) : Rat(num * p);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

}  // namespace

Rat parse_rat(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);
  Rat n = parse_decimal(s.substr(0, slash));
  Rat d = parse_decimal(s.substr(slash + 1));
  if (sgn(d) == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
  Rat r = n / d;
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

bool is_rational_square(const Rat& x, Rat* root) {
  if (sgn(x) < 0) return false;
  Rat c = x;
  c.canonicalize();
  Int rn, rd;
  if (!is_int_square(c.get_num(), &rn) || !is_int_square(c.get_den(), &rd)) return false;
  if (root) *root = Rat(rn, rd);
  return true;
}

long double to_long_double(const Rat& x) { return to_ld(to_real(x)); }

// ---------------------------------------------------------------------------

QuadScalar::QuadScalar(const Rat& a, const Rat& b, const Rat& D) : a_(a), b_(b), d_(D) {
  if (sgn(d_) < 0) throw std::domain_error("QuadScalar: negative radicand");
  normalize();
}

QuadScalar QuadScalar::sqrt(const Rat& x) { return QuadScalar(Rat(0), Rat(1), x); }

void QuadScalar::normalize() {
  if (sgn(b_) == 0 || sgn(d_) == 0) {
    b_ = 0;
    d_ = 0;
    return;
  }
  d_.canonicalize();
  // b sqrt(n/d) = (b/d) sqrt(n d)
  Int N = d_.get_num() * d_.get_den();
  b_ /= Rat(d_.get_den());
  for (unsigned long p = 2; p <= kTrialBound; ++p) {
    Int pp = Int(p) * p;
    if (pp > N) break;
    while (mpz_divisible_p(N.get_mpz_t(), pp.get_mpz_t())) {
      N /= pp;
      b_ *= p;
    }
  }
  Int root;
  if (is_int_square(N, &root)) {
    a_ += b_ * Rat(root);
    b_ = 0;
    d_ = 0;
    return;
  }
  d_ = Rat(N);
}

QuadScalar QuadScalar::expressed_over(const Rat& D) const {
  if (is_rational() || d_ == D) return *this;
  if (sgn(D) == 0) throw FieldMismatch("value " + str() + " is not rational");
  // sqrt(d) = sqrt(d D) / sqrt(D) = (s / D) sqrt(D) when d D = s^2
  Rat s;
  if (!is_rational_square(d_ * D, &s))
    throw FieldMismatch("incomparable quadratic fields: sqrt(" + to_string(d_) + ") vs sqrt(" + to_string(D) + ")");
  QuadScalar r;
  r.a_ = a_;
  r.b_ = b_ * s / D;
  r.d_ = D;
  if (sgn(r.b_) == 0) r.d_ = 0;
  return r;
}

namespace {
// Brings two operands into a common field; returns the radicand.
Rat unify(const QuadScalar& x, const QuadScalar& y, QuadScalar& xo, QuadScalar& yo) {
  if (y.is_rational()) {
    xo = x;
    yo = y;
    return x.D();
  }
  if (x.is_rational() || x.D() == y.D()) {
    xo = x;
    yo = y;
    return y.D();
  }
  xo = x;
  yo = y.expressed_over(x.D());
  return x.D();
}
}  // namespace

QuadScalar QuadScalar::operator-() const {
  QuadScalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  QuadScalar x, y;
  Rat D = unify(*this, o, x, y);
  a_ = x.a_ + y.a_;
  b_ = x.b_ + y.b_;
  d_ = sgn(b_) == 0 ? Rat(0) : D;
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) { return *this += -o; }

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  QuadScalar x, y;
  Rat D = unify(*this, o, x, y);
  Rat na = x.a_ * y.a_ + x.b_ * y.b_ * D;
  Rat nb = x.a_ * y.b_ + x.b_ * y.a_;
  a_ = na;
  b_ = nb;
  d_ = sgn(b_) == 0 ? Rat(0) : D;
  return *this;
}

QuadScalar QuadScalar::conjugate() const {
  QuadScalar r = *this;
  r.b_ = -r.b_;
  return r;
}

Rat QuadScalar::norm() const { return a_ * a_ - b_ * b_ * d_; }

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
  if (o.is_rational()) {
    if (sgn(o.a_) == 0) throw std::domain_error("QuadScalar: division by zero");
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  Rat n = o.norm();  // nonzero: D is not a rational square
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

long double QuadScalar::to_long_double() const { return to_ld(to_real(*this)); }

std::string QuadScalar::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

bool operator==(const QuadScalar& x, const QuadScalar& y) {
  if (x.is_rational() && y.is_rational()) return x.a() == y.a();
  try {
    return is_zero(x - y);
  } catch (const FieldMismatch&) {
    return false;  // distinct fields: the irrational parts cannot cancel
  }
}

std::ostream& operator<<(std::ostream& os, const QuadScalar& x) {
  if (x.is_rational()) return os << x.a();
  return os << x.a() << (sgn(x.b()) < 0 ? " - " : " + ") << abs(x.b()) << "*sqrt(" << x.D() << ")";
}

int quad_sign(const QuadScalar& x) {
  int sa = sgn(x.a()), sb = sgn(x.b());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  int c = cmp(x.a() * x.a(), x.b() * x.b() * x.D());
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

Rat common_radicand(const std::vector<QuadScalar>& xs) {
  Rat D = 0;
  for (const auto& x : xs) {
    if (x.is_rational()) continue;
    if (sgn(D) == 0) {
      D = x.D();
      continue;
    }
    if (x.D() == D) continue;
    (void)x.expressed_over(D);  // throws on mismatch
  }
  return D;
}

// ---------------------------------------------------------------------------

Real to_real(const Rat& x) {
  if (sgn(x) == 0) return Real(0);
  // floor(|n| 2^s / d) carries about 128 significant bits.
  Int n = abs(x.get_num());
  const Int& d = x.get_den();
  long s = 128 - static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) + static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  Int m;
  if (s >= 0)
    mpz_mul_2exp(m.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  else
    mpz_fdiv_q_2exp(m.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
  m /= d;
  Real r = 0;
  const std::size_t limbs = mpz_size(m.get_mpz_t());
  for (std::size_t i = limbs; i-- > 0;) {
    r = ldexp(r, 64) + Real(static_cast<unsigned long long>(mpz_getlimbn(m.get_mpz_t(), i)));
  }
  r = ldexp(r, static_cast<int>(-s));
  return sgn(x) < 0 ? Real(-r) : r;
}

Real to_real(const QuadScalar& x) {
  if (x.is_rational()) return to_real(x.a());
  const Real s = to_real(x.b()) * sqrt(to_real(x.D()));
  // a and b sqrt(D) of opposite sign cancel; go through the exact norm instead
  if (sgn(x.a()) * sgn(x.b()) < 0) return to_real(x.norm()) / (to_real(x.a()) - s);
  return to_real(x.a()) + s;
}

}  // namespace mc
