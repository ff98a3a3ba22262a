#include "wkb/potential.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace wkb {

namespace {

std::vector<cplx> trimmed(std::vector<cplx> c) {
  while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.empty()) c.push_back(cplx{0.0});
  return c;
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(trimmed(std::move(coeffs))) {}

cplx Polynomial::operator()(cplx x) const {
  // Horner with Kahan-style compensation on both components.
  cplx acc = coeffs_.back();
  cplx comp{0.0};
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
    cplx prod = acc * x;
    cplx y = *it - comp;
    cplx t = prod + y;
    comp = (t - prod) - y;
    acc = t;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) return Polynomial{};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = double(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cplx> c(std::max(coeffs_.size(), o.coeffs_.size()), cplx{0.0});
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * cplx{-1.0}; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<cplx> c(coeffs_.size() + o.coeffs_.size() - 1, cplx{0.0});
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(cplx c) const {
  std::vector<cplx> r = coeffs_;
  for (auto& v : r) v *= c;
  return Polynomial(std::move(r));
}

std::string Polynomial::str() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    cplx c = coeffs_[k];
    if (c == cplx{0.0} && coeffs_.size() > 1) continue;
    if (!first) os << " + ";
    first = false;
    if (c.imag() == 0.0) {
      os << "(" << c.real() << ")";
    } else {
      os << "(" << c.real() << " + " << c.imag() << "*i)";
    }
    if (k >= 1) os << "*x";
    if (k >= 2) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser: expr := term (('+'|'-') term)*
//         term := factor (('*'|'/') factor)*
//         factor := unary ('^' factor)?      (right associative power)
//         unary := ('+'|'-')* primary
//         primary := number | variable | 'i' | '(' expr ')'
// Values are polynomials; '/' requires a constant divisor, '^' a constant
// non-negative-integer exponent.
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  char variable = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

  Polynomial parse_expr() {
    Polynomial v = parse_term();
    for (;;) {
      if (eat('+')) {
        v = v + parse_term();
      } else if (eat('-')) {
        v = v - parse_term();
      } else {
        return v;
      }
    }
  }

  Polynomial parse_term() {
    Polynomial v = parse_factor();
    for (;;) {
      if (eat('*')) {
        v = v * parse_factor();
      } else if (eat('/')) {
        std::size_t at = pos;
        Polynomial d = parse_factor();
        if (d.degree() != 0) throw parse_error("division by a non-constant expression", at);
        cplx c = d.coeffs()[0];
        if (c == cplx{0.0}) throw parse_error("division by zero", at);
        v = v * (cplx{1.0} / c);
      } else {
        return v;
      }
    }
  }

  Polynomial parse_factor() {
    Polynomial base = parse_unary();
    if (eat('^')) {
      std::size_t at = pos;
      Polynomial e = parse_factor();
      if (e.degree() != 0) throw parse_error("non-constant exponent", at);
      cplx c = e.coeffs()[0];
      if (c.imag() != 0.0) throw parse_error("non-real exponent", at);
      double n = c.real();
      if (n < 0) throw parse_error("negative exponent", at);
      if (n != std::floor(n)) throw parse_error("fractional exponent", at);
      Polynomial r(std::vector<cplx>{cplx{1.0}});
      Polynomial b = base;
      auto k = static_cast<long>(n);
      while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
      }
      return r;
    }
    return base;
  }

  Polynomial parse_unary() {
    if (eat('-')) return parse_unary() * cplx{-1.0};
    if (eat('+')) return parse_unary();
    return parse_primary();
  }

  Polynomial parse_primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Polynomial v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
        ++pos;
      // exponent part of the literal (e.g. 1e-3)
      if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        std::size_t save = pos;
        ++pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        } else {
          pos = save;  // 'e' was not an exponent; leave it for the variable rule
        }
      }
      double v = 0;
      try {
        v = std::stod(std::string(text.substr(start, pos - start)));
      } catch (const std::exception&) {
        throw parse_error("malformed numeric literal", start);
      }
      return Polynomial(std::vector<cplx>{cplx{v}});
    }
    if (c == 'i' && !(pos + 1 < text.size() &&
                      std::isalnum(static_cast<unsigned char>(text[pos + 1])))) {
      ++pos;
      return Polynomial(std::vector<cplx>{iu});
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      if (variable == 0) variable = c;
      if (c != variable) fail(std::string("unexpected second variable '") + c + "'");
      ++pos;
      return Polynomial(std::vector<cplx>{cplx{0.0}, cplx{1.0}});
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) {
  Parser p{text};
  Polynomial v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

Characteristic characteristic(const Polynomial& V, cplx E) {
  if (V.degree() < 1) throw invalid_argument("potential must have degree >= 1");
  std::vector<cplx> c = V.coeffs();
  for (auto& v : c) v *= 2.0;
  c[0] -= 2.0 * E;
  return Characteristic(Polynomial(std::move(c)), E);
}

int TurningPointSet::total_multiplicity() const {
  return std::accumulate(points.begin(), points.end(), 0,
                         [](int a, const TurningPoint& t) { return a + t.multiplicity; });
}

bool TurningPointSet::all_simple() const {
  return std::all_of(points.begin(), points.end(),
                     [](const TurningPoint& t) { return t.multiplicity == 1; });
}

double TurningPointSet::diameter() const {
  double d = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      d = std::max(d, std::abs(points[i].location - points[j].location));
  return d;
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

namespace {

std::vector<cplx> companion_roots(const std::vector<cplx>& monic) {
  // monic: ascending coefficients with leading 1 dropped-in included.
  int n = static_cast<int>(monic.size()) - 1;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -monic[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cplx> r(n);
  for (int i = 0; i < n; ++i) r[i] = es.eigenvalues()(i);
  return r;
}

}  // namespace

std::vector<cplx> poly_roots(const Polynomial& p, double tol, int max_iter) {
  int n = p.degree();
  if (n < 1) return {};
  if (std::abs(p.leading()) == 0.0) throw invalid_argument("zero leading coefficient");

  std::vector<cplx> a = p.coeffs();
  cplx lead = a.back();
  for (auto& c : a) c /= lead;
  Polynomial monic(a);
  Polynomial dmonic = monic.derivative();

  // Initial guesses on a slightly eccentric circle sized by the Cauchy bound.
  double bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k]));
  double radius = 1.0 + bound;
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) {
    double th = 2 * pi * i / n + 0.4;
    z[i] = radius * 0.5 * std::exp(iu * th) + cplx{0.01, 0.02};
  }

  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      cplx pv = monic(z[i]);
      cplx dv = dmonic(z[i]);
      cplx ratio = (dv == cplx{0.0}) ? cplx{0.0} : pv / dv;
      cplx sum{0.0};
      for (int j = 0; j < n; ++j)
        if (j != i) {
          cplx diff = z[i] - z[j];
          if (std::abs(diff) < 1e-300) diff = cplx{1e-300};
          sum += 1.0 / diff;
        }
      cplx denom = 1.0 - ratio * sum;
      cplx step = (std::abs(denom) < 1e-300) ? ratio : ratio / denom;
      z[i] -= step;
      if (std::abs(step) > tol * (1.0 + std::abs(z[i]))) converged = false;
    }
  }

  if (!converged) z = companion_roots(a);

  // Newton polish (multiple roots stall; clustering absorbs them).
  for (auto& r : z) {
    for (int it = 0; it < 8; ++it) {
      cplx pv = monic(r), dv = dmonic(r);
      if (std::abs(dv) < 1e-300) break;
      cplx step = pv / dv;
      if (std::abs(step) > 0.5 * (1.0 + std::abs(r))) break;
      r -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(r))) break;
    }
  }
  return z;
}

TurningPointSet turning_points(const Characteristic& q, double root_tol) {
  if (q.degree() < 1) throw invalid_argument("characteristic must be nonconstant");
  std::vector<cplx> roots = poly_roots(q.base);

  double scale = 1.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));

  // Cluster: radius root_tol^{1/m} for a tentative multiplicity m.
  std::vector<bool> used(roots.size(), false);
  TurningPointSet out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      double radius = scale * std::pow(root_tol, 1.0 / (cluster.size() + 1.0));
      cplx center{0.0};
      for (auto k : cluster) center += roots[k];
      center /= double(cluster.size());
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(roots[j] - center) < radius) {
          cluster.push_back(j);
          used[j] = true;
          grew = true;
        }
      }
    }
    cplx center{0.0};
    for (auto k : cluster) center += roots[k];
    center /= double(cluster.size());
    out.points.push_back({center, int(cluster.size())});
  }

  // Residual audit.
  double coeff_scale = 0;
  for (const auto& c : q.base.coeffs()) coeff_scale = std::max(coeff_scale, std::abs(c));
  double geom = 1.0;
  for (const auto& t : out.points) geom = std::max(geom, std::abs(t.location));
  for (const auto& t : out.points) {
    if (t.multiplicity == 1 && std::abs(q.q(t.location)) >
                                   root_tol * coeff_scale * std::pow(geom, q.degree())) {
      throw numeric_error("turning-point polish failed, residual " +
                          std::to_string(std::abs(q.q(t.location))));
    }
  }
  std::sort(out.points.begin(), out.points.end(), [](const TurningPoint& a, const TurningPoint& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return out;
}

cplx omega(const Characteristic& q, cplx x, cplx sqrt_q) {
  cplx qv = q.q(x);
  double coeff_scale = 0;
  for (const auto& c : q.base.coeffs()) coeff_scale = std::max(coeff_scale, std::abs(c));
  if (std::abs(qv) < 1e-13 * (coeff_scale + 1.0))
    throw numeric_error("omega evaluated too close to a turning point");
  cplx q32 = qv * sqrt_q;
  cplx q52 = qv * q32;
  cplx d1 = q.qp(x), d2 = q.qpp(x);
  return 0.25 * d2 / q32 - (5.0 / 16.0) * d1 * d1 / q52;
}

cplx omega_tilde(const Characteristic& q, cplx x, cplx sqrt_q) {
  return omega(q, x, sqrt_q) / sqrt_q;
}

}  // namespace wkb
