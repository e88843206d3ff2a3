#include "momentcurve/measures.hpp"

#include <Eigen/Dense>
#include <complex>
#include <sstream>

#include "momentcurve/blocks.hpp"
#include "momentcurve/conics.hpp"
#include "momentcurve/cubic_circular.hpp"
#include "momentcurve/cubic_parabolic.hpp"
#include "momentcurve/univariate.hpp"

namespace mc {

using cld = std::complex<long double>;
using CMat = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;
using CVec = Eigen::Matrix<cld, Eigen::Dynamic, 1>;

bool AtomicMeasure::is_exact() const {
  for (const auto& a : atoms)
    if (!a.is_exact()) return false;
  return true;
}

MomentSequence moments_of(const AtomicMeasure& mu, int k) {
  MomentSequence beta(k);
  for (const auto& at : mu.atoms) {
    if (!at.is_exact()) throw InputError("exact synthesis needs rational atoms");
    if (sgn(*at.wq) <= 0) throw InputError("atom weights must be positive");
    std::vector<Rat> px{1}, py{1};
    for (int n = 1; n <= 2 * k; ++n) {
      px.push_back(px.back() * *at.xq);
      py.push_back(py.back() * *at.yq);
    }
    for (int d = 0; d <= 2 * k; ++d)
      for (int j = 0; j <= d; ++j) beta(d - j, j) += *at.wq * px[d - j] * py[j];
  }
  return beta;
}

MomentSequence synthesize(const CanonicalForm& curve, const AtomicMeasure& mu, int k) {
  const auto terms = curve.relation_terms();
  for (const auto& at : mu.atoms) {
    if (!at.is_exact()) throw InputError("exact synthesis needs rational atoms");
    QuadScalar r(0);
    for (const auto& [m, c] : terms) {
      Rat mono = 1;
      for (int n = 0; n < m.i; ++n) mono *= *at.xq;
      for (int n = 0; n < m.j; ++n) mono *= *at.yq;
      r += c * QuadScalar(mono);
    }
    if (!is_zero(r)) {
      std::ostringstream os;
      os << "atom (" << to_string(*at.xq) << ", " << to_string(*at.yq) << ") is off the curve " << curve.str()
         << ": residual " << r;
      throw InputError(os.str());
    }
  }
  return moments_of(mu, k);
}

Real max_relative_residual(const MomentSequence& beta, const AtomicMeasure& mu) {
  const int k = beta.k();
  if (mu.is_exact()) {
    bool positive = true;
    for (const auto& at : mu.atoms) positive = positive && sgn(*at.wq) > 0;
    if (positive) {
      const MomentSequence s = moments_of(mu, k);
      Real worst = 0;
      for (int d = 0; d <= 2 * k; ++d)
        for (int j = 0; j <= d; ++j) {
          const Rat diff = abs(beta(d - j, j) - s(d - j, j));
          if (sgn(diff) == 0) continue;
          const Real e = to_real(diff / (1 + abs(beta(d - j, j))));
          if (e > worst) worst = e;
        }
      return worst;
    }
  }
  std::vector<std::vector<Real>> sums(2 * k + 1, std::vector<Real>(2 * k + 1, Real(0)));
  for (const auto& at : mu.atoms) {
    std::vector<Real> px{Real(1)}, py{Real(1)};
    for (int n = 1; n <= 2 * k; ++n) {
      px.push_back(px.back() * at.x);
      py.push_back(py.back() * at.y);
    }
    for (int d = 0; d <= 2 * k; ++d)
      for (int j = 0; j <= d; ++j) sums[d - j][j] += at.w * px[d - j] * py[j];
  }
  Real worst = 0;
  for (int d = 0; d <= 2 * k; ++d)
    for (int j = 0; j <= d; ++j) {
      const Real b = to_real(beta(d - j, j));
      const Real e = abs(b - sums[d - j][j]) / (1 + abs(b));
      if (e > worst) worst = e;
    }
  return worst;
}

bool verify(const MomentSequence& beta, const AtomicMeasure& mu, double rel_tol) {
  for (const auto& at : mu.atoms)
    if (!(at.w > 0)) return false;
  return max_relative_residual(beta, mu) <= Real(rel_tol);
}

// ---------------------------------------------------------------------------

namespace {

// Roots of sum_l coef[l] z^l via the companion matrix, then Newton polishing.
std::vector<cld> poly_roots(std::vector<cld> coef) {
  while (!coef.empty() && std::abs(coef.back()) == 0) coef.pop_back();
  const int n = static_cast<int>(coef.size()) - 1;
  if (n < 1) return {};
  CMat C = CMat::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -coef[static_cast<std::size_t>(i)] / coef.back();
  Eigen::ComplexEigenSolver<CMat> es(C, false);
  if (es.info() != Eigen::Success) throw NumericFailure("companion eigenvalue iteration did not converge");
  std::vector<cld> roots;
  for (int i = 0; i < n; ++i) {
    cld z = es.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      cld p = 0, dp = 0;
      for (int l = n; l >= 0; --l) {
        dp = dp * z + p;
        p = p * z + coef[static_cast<std::size_t>(l)];
      }
      if (std::abs(dp) == 0) break;
      z -= p / dp;
    }
    roots.push_back(z);
  }
  return roots;
}

}  // namespace

std::vector<Atom> circle_atoms(const MomentSeq<QuadScalar>& beta, std::size_t r, double rel_tol) {
  if (r == 0) return {};
  const int k = beta.k();
  const std::size_t n = static_cast<std::size_t>(2 * k);
  // c_m = L(z^m) with z = x + i y
  std::vector<cld> c(n + 1);
  std::vector<std::vector<long double>> binom(n + 1, std::vector<long double>(n + 1, 0));
  for (std::size_t m = 0; m <= n; ++m) {
    binom[m][0] = 1;
    for (std::size_t l = 1; l <= m; ++l) binom[m][l] = binom[m - 1][l - 1] + (l < m ? binom[m - 1][l] : 0);
  }
  const cld I(0, 1);
  for (std::size_t m = 0; m <= n; ++m) {
    cld s = 0, ip = 1;
    for (std::size_t l = 0; l <= m; ++l) {
      s += binom[m][l] * ip * static_cast<long double>(to_ld(to_real(beta(static_cast<int>(m - l), static_cast<int>(l)))));
      ip *= I;
    }
    c[m] = s;
  }
  auto cc = [&](long long d) { return d >= 0 ? c[static_cast<std::size_t>(d)] : std::conj(c[static_cast<std::size_t>(-d)]); };

  std::vector<cld> poly;
  if (r <= n) {
    // kernel vector q of the (r+1)-Toeplitz matrix: sum conj(q_l) z^l
    // vanishes at every atom
    CMat T(r + 1, r + 1);
    for (std::size_t j = 0; j <= r; ++j)
      for (std::size_t l = 0; l <= r; ++l) T(j, l) = cc(static_cast<long long>(j) - static_cast<long long>(l));
    Eigen::JacobiSVD<CMat> svd(T, Eigen::ComputeFullV);
    CVec q = svd.matrixV().col(static_cast<Eigen::Index>(r));
    for (std::size_t l = 0; l <= r; ++l) poly.push_back(std::conj(q(static_cast<Eigen::Index>(l))));
  } else {
    // positive definite: z phi_n(z) - phi_n^*(z) with phi_n the monic
    // orthogonal polynomial of degree n = 2k
    CMat T(n, n);
    CVec rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) T(j, l) = cc(static_cast<long long>(l) - static_cast<long long>(j));
      rhs(j) = -cc(static_cast<long long>(n) - static_cast<long long>(j));
    }
    CVec a = T.fullPivLu().solve(rhs);
    std::vector<cld> phi(n + 1);
    for (std::size_t l = 0; l < n; ++l) phi[l] = a(static_cast<Eigen::Index>(l));
    phi[n] = 1;
    poly.assign(n + 2, 0);
    for (std::size_t l = 0; l <= n; ++l) {
      poly[l + 1] += phi[l];
      poly[n - l] -= std::conj(phi[l]);
    }
  }
  std::vector<cld> z = poly_roots(poly);
  for (auto& v : z) v /= std::abs(v);
  const std::size_t m = z.size();
  // real weights from the complex moment equations, least squares
  const std::size_t rows = 2 * (n + 1);
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> V(rows, m);
  Eigen::Matrix<long double, Eigen::Dynamic, 1> b(rows);
  for (std::size_t p = 0; p <= n; ++p) {
    for (std::size_t i = 0; i < m; ++i) {
      const cld zp = std::pow(z[i], static_cast<int>(p));
      V(2 * p, i) = zp.real();
      V(2 * p + 1, i) = zp.imag();
    }
    b(2 * p) = c[p].real();
    b(2 * p + 1) = c[p].imag();
  }
  Eigen::Matrix<long double, Eigen::Dynamic, 1> w = V.colPivHouseholderQr().solve(b);
  std::vector<Atom> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(w(i) > 0)) {
      std::ostringstream os;
      os << "circle atom at angle " << static_cast<double>(std::arg(z[i])) << " has weight " << static_cast<double>(w(i));
      throw NumericFailure(os.str());
    }
    out.push_back(Atom::numeric(Real(z[i].real()), Real(z[i].imag()), Real(w(i))));
  }
  (void)rel_tol;
  return out;
}

AtomicMeasure extract(const MomentSequence& beta, CubicType type, const Rat& a, const SolveReport& report,
                      double rel_tol) {
  if (!report.exists || !report.witness) throw InputError("extraction needs a positive verdict with a witness");
  const QuadScalar t = report.witness->t, u = report.witness->u;
  BlockDecomp blocks;
  QuadMat G;
  if (type == CubicType::Circular) {
    const CircularWork w = compute_circular_work(beta, a);
    blocks = w.blocks;
    G = circular_G(w, t, u);
  } else {
    const ParabolicWork w = compute_parabolic_work(beta);
    blocks = w.blocks;
    G = parabolic_G(w, t, u);
  }
  AtomicMeasure mu;
  std::string stage = "line component";
  try {
    for (const auto& at : extract_atoms_hankel(hankel_entries(line_part(blocks, G)), rel_tol))
      mu.atoms.push_back(Atom::numeric(at.x, Real(0), at.w));
    stage = "conic component";
    const MomentSeq<QuadScalar> cs = conic_sequence(blocks, beta, G);
    if (type == CubicType::Parabolic) {
      for (const auto& at : extract_atoms_hankel(gamma_of(cs), rel_tol))
        mu.atoms.push_back(Atom::numeric(at.x * at.x, at.x, at.w));
    } else {
      const MomentSeq<QuadScalar> us = to_unit_circle(cs, a);
      const std::size_t r = rank(moment_matrix(us));
      const Real half_abs = to_real(abs(a) / 2), half = to_real(a / 2);
      for (const auto& at : circle_atoms(us, r, rel_tol))
        mu.atoms.push_back(Atom::numeric(half_abs * at.x, half * (at.y - 1), at.w));
    }
  } catch (const NumericFailure& e) {
    throw NumericFailure(stage + ": " + e.what());
  } catch (const InputError& e) {
    throw NumericFailure(stage + ": " + e.what());
  }
  const Real res = max_relative_residual(beta, mu);
  if (res > Real(rel_tol)) {
    std::ostringstream os;
    os << "extracted measure (" << mu.atoms.size() << " atoms) misses the moments: relative residual "
       << static_cast<double>(res) << " > " << rel_tol;
    throw NumericFailure(os.str());
  }
  return mu;
}

Rat random_rational(std::mt19937_64& rng, int height, bool allow_zero) {
  std::uniform_int_distribution<int> num(-height, height), den(1, height);
  for (;;) {
    Rat q(num(rng), den(rng));
    q.canonicalize();
    if (allow_zero || sgn(q) != 0) return q;
  }
}

}  // namespace mc
