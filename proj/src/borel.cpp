#include "wkb/borel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "wkb/quadrature.hpp"

namespace wkb {
namespace {

double factorial(int n) {
  static const auto table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] * double(k);
    return t;
  }();
  return table.at(std::size_t(n));
}

double radius_by_ratio(const std::vector<cplx>& b) {
  // |b_n| ~ C R^{-n} n^alpha gives ratios r_n = |b_{n-1}|/|b_n| = R (1 + alpha/n
  // + ...), so extrapolate a least-squares line in 1/n to 1/n -> 0.
  const int N = int(b.size()) - 1;
  if (N < 6) return 0.0;
  std::vector<std::pair<double, double>> pts;  // (1/n, r_n)
  for (int n = std::max(2, (2 * N) / 3); n <= N; ++n) {
    const double hi = std::abs(b[std::size_t(n)]);
    const double lo = std::abs(b[std::size_t(n) - 1]);
    if (hi > 1e-300 && lo > 1e-300) pts.emplace_back(1.0 / double(n), lo / hi);
  }
  if (pts.empty()) return 0.0;
  if (pts.size() == 1) return pts[0].second;
  double su = 0, sv = 0, suu = 0, suv = 0;
  for (auto [u, v] : pts) {
    su += u;
    sv += v;
    suu += u * u;
    suv += u * v;
  }
  const double n = double(pts.size());
  const double det = n * suu - su * su;
  if (std::abs(det) < 1e-30) return sv / n;
  const double intercept = (suu * sv - su * suv) / det;
  return intercept > 0.0 ? intercept : sv / n;
}

cplx horner(const std::vector<cplx>& c, cplx s) {
  cplx acc{0.0};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * s + c[k];
  return acc;
}

// I_0(sqrt(w)) = sum_k (w/4)^k / (k!)^2 (entire in w)
cplx bessel_i0_sq(cplx w) {
  cplx term{1.0}, acc{1.0};
  for (int k = 1; k < 400; ++k) {
    term *= w / (4.0 * double(k) * double(k));
    acc += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
  }
  return acc;
}

// semi-infinite ray integral: 2 lambda int_{inf e^{i theta}}^{0} e^{2 lambda s} f(s) ds
LaplaceResult laplace_ray(const std::function<cplx(cplx)>& f, cplx lambda, double theta,
                          double tol) {
  const cplx dir = std::polar(1.0, theta);
  const cplx u = 2.0 * lambda * dir;
  if (-u.real() <= 1e-12 * std::abs(u)) {
    throw numeric_error("laplace_sum: kernel does not decay along the requested ray");
  }
  const double T = 45.0 / (-u.real());
  const cplx integral =
      integrate([&](double t) { return std::exp(u * t) * f(t * dir); }, 0.0, T, tol);
  LaplaceResult r;
  r.value = -2.0 * lambda * dir * integral;
  r.error = tol * (1.0 + std::abs(r.value)) + std::exp(-40.0);
  return r;
}

void check_ray_clear(const PadeApproximant& p, double theta, double T, double ray_margin) {
  const cplx dir = std::polar(1.0, theta);
  for (std::size_t i = 0; i < p.poles.size(); ++i) {
    if (p.froissart[i]) continue;
    const cplx z = p.poles[i];
    const double proj = std::clamp(std::real(z * std::conj(dir)), 0.0, T);
    const double dist = std::abs(z - proj * dir);
    if (dist < ray_margin * std::abs(z)) {
      std::ostringstream os;
      os << "laplace_sum: ray at angle " << theta << " passes within margin of pole ("
         << z.real() << ", " << z.imag() << ")";
      throw numeric_error(os.str());
    }
  }
}

// local chart xi(x) near a base point: inverts xi displacements by Newton with
// branch-tracked sqrt(q)
struct XiChart {
  const Characteristic* q;
  int sigma;
  cplx x0, s0, xi0;

  // returns (x, sqrt branch at x) with xi(x) = target
  std::pair<cplx, cplx> invert(cplx target) const {
    cplx xc = x0, sc = s0, xic = xi0;
    for (int it = 0; it < 120; ++it) {
      const cplx dxi = target - xic;
      if (std::abs(dxi) <= 1e-13 * (1.0 + std::abs(target))) return {xc, sc};
      cplx step = dxi / (-double(sigma) * sc);
      const double cap = 0.2 * (1.0 + std::abs(x0));
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      const cplx xa = xc, sref = sc;
      const cplx inc = integrate(
          [&](double t) {
            cplx w = std::sqrt(q->q(xa + t * step));
            if (std::real(w * std::conj(sref)) < 0.0) w = -w;
            return -double(sigma) * w * step;
          },
          0.0, 1.0, 1e-14);
      xc = xa + step;
      cplx sn = std::sqrt(q->q(xc));
      if (std::real(sn * std::conj(sc)) < 0.0) sn = -sn;
      sc = sn;
      xic += inc;
    }
    throw numeric_error("xi-chart inversion did not converge");
  }

  cplx omega_tilde_at(cplx xi) const {
    const auto [x, s] = invert(xi);
    return omega_tilde(*q, x, s);
  }
};

}  // namespace

BorelSeries to_borel(const AsymptoticSeries& a) {
  if (a.order() < 1) throw invalid_argument("to_borel: need at least two orders");
  BorelSeries b;
  b.source = a;
  b.coeffs.resize(a.coeffs.size());
  double sign = 1.0;
  for (std::size_t n = 0; n < a.coeffs.size(); ++n, sign = -sign) {
    b.coeffs[n] = a.coeffs[n] * sign / factorial(int(n));
  }
  b.radius_estimate = radius_by_ratio(b.coeffs);
  return b;
}

AsymptoticSeries normalized_for_laplace(const AsymptoticSeries& a) {
  AsymptoticSeries out = a;
  if (a.signature > 0) {
    for (std::size_t n = 1; n < out.coeffs.size(); n += 2) out.coeffs[n] = -out.coeffs[n];
  }
  return out;
}

cplx PadeApproximant::eval(cplx s) const { return horner(numerator, s) / horner(denominator, s); }

PadeApproximant pade(const BorelSeries& b, int L, int M) {
  if (L < 0 || M < 0) throw invalid_argument("pade: negative order");
  if (L + M + 1 > int(b.coeffs.size())) throw invalid_argument("pade: not enough orders");
  const auto& c = b.coeffs;
  double cscale = 0.0;
  for (int k = 0; k <= L + M; ++k) cscale = std::max(cscale, std::abs(c[std::size_t(k)]));
  if (cscale == 0.0) cscale = 1.0;

  PadeApproximant out;
  int m = M;
  std::vector<cplx> den;
  for (; m >= 1; --m) {
    Eigen::MatrixXcd A(m, m);
    Eigen::VectorXcd rhs(m);
    auto cc = [&](int n) { return n >= 0 ? c[std::size_t(n)] : cplx{0.0}; };
    for (int k = 1; k <= m; ++k) {
      for (int j = 1; j <= m; ++j) A(k - 1, j - 1) = cc(L + k - j);
      rhs(k - 1) = -cc(L + k);
    }
    Eigen::VectorXcd sol = A.colPivHouseholderQr().solve(rhs);
    const double resid = (A * sol - rhs).norm();
    if (!sol.allFinite() || resid > 1e-8 * cscale * std::max(1.0, sol.norm())) continue;
    den.assign(std::size_t(m) + 1, cplx{0.0});
    den[0] = 1.0;
    for (int j = 1; j <= m; ++j) den[std::size_t(j)] = sol(j - 1);
    break;
  }
  if (den.empty()) den = {cplx{1.0}};  // reduced to a polynomial
  // strip negligible trailing denominator coefficients (degenerate tails)
  double dnorm = 0.0;
  for (const auto& d : den) dnorm = std::max(dnorm, std::abs(d));
  while (den.size() > 1 && std::abs(den.back()) <= 1e-12 * dnorm) den.pop_back();
  out.L = L;
  out.M = int(den.size()) - 1;
  out.denominator = den;
  out.numerator.assign(std::size_t(L) + 1, cplx{0.0});
  for (int k = 0; k <= L; ++k) {
    cplx acc{0.0};
    for (int j = 0; j <= std::min(k, out.M); ++j) acc += den[std::size_t(j)] * c[std::size_t(k - j)];
    out.numerator[std::size_t(k)] = acc;
  }

  if (out.M >= 1) {
    out.poles = poly_roots(Polynomial(out.denominator));
    Polynomial dp = Polynomial(out.denominator).derivative();
    std::vector<cplx> zeros;
    if (out.numerator.size() > 1) zeros = poly_roots(Polynomial(out.numerator));
    const double fd_tol =
        1e-3 * (b.radius_estimate > 0.0 ? b.radius_estimate : 1.0);
    for (const cplx& z : out.poles) {
      out.residues.push_back(horner(out.numerator, z) / dp(z));
      bool doublet = false;
      for (const cplx& w : zeros) {
        if (std::abs(w - z) < fd_tol) doublet = true;
      }
      out.froissart.push_back(doublet);
    }
  }
  return out;
}

SingularityForecast predicted_singularities(const StokesGraph& g, cplx x) {
  SingularityForecast f;
  f.moving = -double(g.sector(1).signature) * sector_action(g, 1, x);
  for (const auto& line : g.lines) {
    if (!line.finite || line.samples.size() < 2) continue;
    std::vector<cplx> nodes;
    nodes.push_back(g.tps.points[std::size_t(line.origin)].location);
    for (const auto& smp : line.samples) {
      if (std::abs(smp.x - nodes.back()) > 1e-9 * (1.0 + g.scale)) nodes.push_back(smp.x);
    }
    const cplx term = g.tps.points[std::size_t(line.terminus_tp)].location;
    if (std::abs(term - nodes.back()) > 1e-9 * (1.0 + g.scale)) nodes.push_back(term);
    if (nodes.size() < 2) continue;
    const BranchedRoot br =
        continue_branch(g.q, OrientedPath::through(nodes), line.samples.front().sqrt_q);
    f.fixed.push_back(action(br).value);
  }
  return f;
}

LaplaceResult laplace_sum(const PadeApproximant& p, cplx lambda, double ray_angle,
                          double ray_margin, double tol) {
  const cplx u = 2.0 * lambda * std::polar(1.0, ray_angle);
  if (-u.real() > 0.0) check_ray_clear(p, ray_angle, 45.0 / (-u.real()), ray_margin);
  return laplace_ray([&](cplx s) { return p.eval(s); }, lambda, ray_angle, tol);
}

LaplaceResult laplace_sum(const BorelSeries& b, cplx lambda, double ray_angle, double tol) {
  return laplace_ray([&](cplx s) { return horner(b.coeffs, s); }, lambda, ray_angle, tol);
}

CutSum laplace_cut(const PadeApproximant& p, cplx lambda, double cut_angle, double delta,
                   double ray_margin, double tol) {
  CutSum c;
  c.plus = laplace_sum(p, lambda, cut_angle + delta, ray_margin, tol);
  c.minus = laplace_sum(p, lambda, cut_angle - delta, ray_margin, tol);
  c.jump = c.plus.value - c.minus.value;
  return c;
}

BorelSeries convolve(const BorelSeries& f, const BorelSeries& g) {
  BorelSeries h;
  h.source = f.source;
  const std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
  h.coeffs.assign(n, cplx{0.0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) {
      h.coeffs[i + j] +=
          f.coeffs[i] * g.coeffs[j] * (factorial(int(i)) * factorial(int(j)) / factorial(int(i + j)));
    }
  }
  h.radius_estimate = radius_by_ratio(h.coeffs);
  return h;
}

cplx omega_integral(const StokesGraph& g, const OrientedPath& omega_path) {
  const auto s = chi_series(g, 1, omega_path, omega_path.end(), 1);
  return -s.coeffs[1];
}

cplx phi_topological(const StokesGraph& g, const OrientedPath& omega_path, cplx s, int order,
                     double contour_margin) {
  if (order != 0 && order != 1) throw invalid_argument("phi_topological: order must be 0 or 1");
  const cplx Omega = omega_integral(g, omega_path);
  if (order == 0) return bessel_i0_sq(4.0 * s * Omega);

  const cplx x = omega_path.end();
  // straight eta-contours from 0 to s: refuse when a forecast branch point is
  // too close to the segment
  SingularityForecast fc = predicted_singularities(g, x);
  const cplx xi = fc.moving;
  std::vector<cplx> sing{fc.moving};
  for (const cplx& z : fc.fixed) {
    sing.push_back(fc.moving - z);
    sing.push_back(fc.moving + z);
  }
  const double margin = contour_margin * std::abs(xi);
  const double slen = std::abs(s);
  for (const cplx& z : sing) {
    const cplx dir = (slen > 0.0) ? s / slen : cplx{1.0};
    const double proj = std::clamp(std::real(z * std::conj(dir)), 0.0, slen);
    if (std::abs(z - proj * dir) < margin) {
      throw numeric_error("phi_topological: straight contour passes near a forecast branch point");
    }
  }
  if (slen == 0.0) return cplx{0.0};

  const XiChart chart{&g.q, g.sector(1).signature, x, sector_branch_at(g, 1, x), xi};
  // D(ep) = Omega(xi) - Omega(xi - ep) = int_0^ep omega_tilde(xi - u) du
  auto D = [&](cplx ep) {
    if (std::abs(ep) == 0.0) return cplx{0.0};
    return integrate([&](double t) { return chart.omega_tilde_at(xi - t * ep) * ep; }, 0.0, 1.0,
                     1e-11);
  };
  // Phi^(1)(xi, s) = -int_0^s d eta int_0^eta d eta' omega_tilde(xi - eta')
  //   Phi^(0)(xi - eta', eta - eta') I_0(sqrt(-4 (s - eta) D(eta')))
  const cplx val = integrate(
      [&](double a) {
        const cplx eta = a * s;
        const cplx in = integrate(
            [&](double bb) {
              const cplx etap = bb * eta;
              const cplx d = D(etap);
              return chart.omega_tilde_at(xi - etap) *
                     bessel_i0_sq(4.0 * (eta - etap) * (Omega - d)) *
                     bessel_i0_sq(-4.0 * (s - eta) * d) * eta;
            },
            0.0, 1.0, 1e-10);
        return in * s;
      },
      0.0, 1.0, 1e-9);
  return -val;
}

}  // namespace wkb
