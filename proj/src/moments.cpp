#include "momentcurve/moments.hpp"

#include <cctype>
#include <sstream>

namespace mc {

std::string monomial_name(const Monomial& m) {
  if (m.i == 0 && m.j == 0) return "1";
  std::string s;
  if (m.i > 0) s += m.i == 1 ? "X" : "X^" + std::to_string(m.i);
  if (m.j > 0) s += m.j == 1 ? "Y" : "Y^" + std::to_string(m.j);
  return s;
}

MonomialIndex::MonomialIndex(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  for (int d = 0; d <= degree; ++d)
    for (int j = 0; j <= d; ++j) list_.push_back({d - j, j});
}

std::size_t MonomialIndex::index_of(int i, int j) const {
  if (i < 0 || j < 0 || i + j > degree_) throw std::out_of_range("monomial outside index");
  return deglex_index(i, j);
}

// ---------------------------------------------------------------------------

Poly2::Poly2(const Rat& c) {
  if (sgn(c) != 0) terms_[{0, 0}] = c;
}

Poly2 Poly2::monomial(int i, int j, const Rat& c) {
  Poly2 p;
  p.set(i, j, c);
  return p;
}

Rat Poly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly2::set(int i, int j, const Rat& c) {
  if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
  if (sgn(c) == 0)
    terms_.erase({i, j});
  else
    terms_[{i, j}] = c;
}

int Poly2::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) set(e.first, e.second, coeff(e.first, e.second) + c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) set(e.first, e.second, coeff(e.first, e.second) - c);
  return *this;
}

Poly2& Poly2::operator*=(const Rat& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      const int i = ea.first + eb.first, j = ea.second + eb.second;
      r.set(i, j, r.coeff(i, j) + ca * cb);
    }
  return r;
}

Poly2 Poly2::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  Poly2 r(Rat(1));
  for (int n = 0; n < e; ++n) r = r * *this;
  return r;
}

Rat Poly2::evaluate(const Rat& x, const Rat& y) const {
  Rat s = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (int n = 0; n < e.first; ++n) t *= x;
    for (int n = 0; n < e.second; ++n) t *= y;
    s += t;
  }
  return s;
}

long double Poly2::evaluate(long double x, long double y) const {
  long double s = 0;
  for (const auto& [e, c] : terms_) {
    long double t = to_long_double(c);
    for (int n = 0; n < e.first; ++n) t *= x;
    for (int n = 0; n < e.second; ++n) t *= y;
    s += t;
  }
  return s;
}

std::string Poly2::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rat>> ordered;
  for (const auto& [e, c] : terms_) ordered.push_back({{e.first, e.second}, c});
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    Rat a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const bool unit = a == 1;
    const bool constant = m.i == 0 && m.j == 0;
    if (!unit || constant) os << a;
    if (!constant) {
      if (!unit) os << "*";
      std::string sep;
      if (m.i > 0) {
        os << "x";
        if (m.i > 1) os << "^" << m.i;
        sep = "*";
      }
      if (m.j > 0) {
        os << sep << "y";
        if (m.j > 1) os << "^" << m.j;
      }
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// A small recursive-descent parser:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power (['*'] power)*
//   power  := atom ['^' integer]
//   atom   := number ['/' number] | 'x' | 'y' | '(' expr ')'

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  Poly2 run() {
    Poly2 p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Poly2 expr() {
    Poly2 acc;
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = s_[pos_++] == '-';
    Poly2 t = term();
    acc = neg ? -t : t;
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Poly2 u = term();
      if (c == '+') acc += u;
      else acc -= u;
    }
    return acc;
  }

  bool starts_atom(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == 'y' || c == 'X' || c == 'Y' || c == '(';
  }

  Poly2 term() {
    Poly2 acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * power();
      } else if (starts_atom(c)) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly2 power() {
    Poly2 base = atom();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return base;
  }

  std::string number_token() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("expected number");
    return s_.substr(start, pos_ - start);
  }

  Poly2 atom() {
    char c = peek();
    if (c == 'x' || c == 'X') {
      ++pos_;
      return Poly2::x();
    }
    if (c == 'y' || c == 'Y') {
      ++pos_;
      return Poly2::y();
    }
    if (c == '(') {
      ++pos_;
      Poly2 p = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string num = number_token();
      if (peek() == '/') {
        ++pos_;
        num += "/" + number_token();
      }
      return Poly2(parse_rat(num));
    }
    fail("unexpected token");
  }
};

}  // namespace

Poly2 Poly2::parse(const std::string& text) { return PolyParser(text).run(); }

}  // namespace mc
