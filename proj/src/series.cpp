#include "wkb/series.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wkb/quadrature.hpp"

namespace wkb {
namespace {

void require_polyline(const OrientedPath& path) {
  for (std::size_t j = 0; j < path.segments(); ++j) {
    if (path.kind(j) != OrientedPath::Kind::line) {
      throw invalid_argument("series integration requires an all-line path; replace arcs by a polygon");
    }
  }
}

// Logarithmic-derivative densities in closed form. With s = sqrt(q) and
// u = chi'/chi = sum_m u_m lambda^{-m}, u_m = sigma^m v_m, each density is
//   v_m = P_m(x) / q^{(3m+2)/2}
// with polynomial numerators obeying
//   P_1     = (5/32) q'^2 - (1/8) q q'',
//   P_{m+1} = (1/2) q P_m' - ((3m+3)/4) q' P_m + (1/2) sum_{j+l=m} P_j P_l.
// Working with exact polynomials avoids repeated numerical differentiation,
// so every order is obtained at quadrature accuracy independently.
std::vector<Polynomial> riccati_polynomials(const Characteristic& q, int N) {
  std::vector<Polynomial> P;
  if (N < 1) return P;
  P.reserve(std::size_t(N));
  P.push_back(q.dq * q.dq * cplx{5.0 / 32.0} - q.base * q.d2q * cplx{1.0 / 8.0});
  for (int m = 1; m < N; ++m) {
    Polynomial next = q.base * P.back().derivative() * cplx{0.5} -
                      q.dq * P.back() * cplx{0.25 * double(3 * m + 3)};
    for (int j = 1; j <= m - 1; ++j) {
      next = next + P[std::size_t(j) - 1] * P[std::size_t(m - j) - 1] * cplx{0.5};
    }
    P.push_back(std::move(next));
  }
  return P;
}

// Evaluates v_m at a path point on the tracked branch of sqrt(q), with the
// magnitude handled in log scale so that huge |x| (anchor tails) and small
// |q| (near turning points) neither overflow nor underflow prematurely.
struct DensityEvaluator {
  const Characteristic* q;
  const BranchedRoot* br;
  const std::vector<Polynomial>* P;

  cplx value(int m, std::size_t seg, double t, cplx x) const {
    const auto& coef = (*P)[std::size_t(m) - 1].coeffs();
    cplx acc{0.0};
    double off = 0.0;
    for (std::size_t k = coef.size(); k-- > 0;) {
      acc = acc * x + coef[k] * std::exp(-off);
      const double aa = std::abs(acc);
      if (aa > 1e130) {
        acc /= aa;
        off += std::log(aa);
      }
    }
    if (acc == cplx{0.0}) return cplx{0.0};
    const cplx qv = q->q(x);
    if (qv == cplx{0.0}) throw numeric_error("series density evaluated at a turning point");
    const cplx lq = std::log(qv);
    const double e_half = 0.5 * double(3 * m + 2);
    const double mag = off + std::log(std::abs(acc)) - e_half * lq.real();
    if (mag < -745.0) return cplx{0.0};
    if (mag > 700.0) throw numeric_error("series density overflow; path too close to a turning point");
    cplx v = std::exp(cplx{mag, std::arg(acc) - e_half * lq.imag()});
    if (m % 2 == 1) {
      // odd densities flip with the branch of sqrt(q)
      const cplx principal = std::exp(0.5 * lq);
      if (std::real(br->sqrt_at(seg, t) * std::conj(principal)) < 0.0) v = -v;
    }
    return v;
  }
};

// Path integral of v_m along the (polyline) branched path.
cplx density_integral(const DensityEvaluator& ev, int m, double tol) {
  const OrientedPath& path = ev.br->path();
  cplx total{0.0};
  for (std::size_t j = 0; j < path.segments(); ++j) {
    const cplx a = path.nodes[j], b = path.nodes[j + 1];
    total += integrate(
        [&](double u) { return ev.value(m, j, u, a + u * (b - a)) * (b - a); }, 0.0, 1.0, tol);
  }
  return total;
}

std::vector<cplx> log_coeffs_from_integrals(const std::vector<cplx>& integrals) {
  std::vector<cplx> a(integrals.size() + 1, cplx{0.0});
  double two_m = 2.0;
  for (std::size_t m = 1; m < a.size(); ++m, two_m *= 2.0) a[m] = two_m * integrals[m - 1];
  return a;
}

}  // namespace

std::vector<cplx> anchored_integrals(const StokesGraph& g, int k, const OrientedPath& path, int N,
                                     double tol) {
  if (N < 1 || N > 2 * series_order_max) throw invalid_argument("series order out of range");
  require_polyline(path);
  path.validate();
  const Sector& sec = g.sector(k);
  const cplx x_start = path.start();

  // Extend radially to R_out, where the densities' analytic tails are below
  // roundoff of the leading coefficients; a first-order power-law tail
  // correction accounts for the remainder beyond R_out.
  const double r0 = std::abs(x_start);
  if (r0 < 1e-12) throw invalid_argument("anchored_integrals: path start too close to the origin");
  const int nq = g.q.degree();
  double r_out = std::pow(1e12, 2.0 / double(nq + 2)) * std::max(g.scale, 1.0);
  r_out = std::max(r_out, 4.0 * r0);
  const cplx dir = x_start / r0;

  std::vector<cplx> nodes;
  for (double r = r_out; r > 2.0 * r0; r *= 0.5) nodes.push_back(r * dir);
  nodes.push_back(x_start);
  for (std::size_t j = 1; j < path.nodes.size(); ++j) nodes.push_back(path.nodes[j]);

  const cplx s0 = sector_branch_at(g, sec.index, x_start);
  const BranchedRoot out = continue_branch(g.q, OrientedPath::line(x_start, nodes.front()), s0);
  const BranchedRoot full = continue_branch(g.q, OrientedPath::through(nodes), out.final_value());

  const auto P = riccati_polynomials(g.q, N);
  const DensityEvaluator ev{&g.q, &full, &P};
  std::vector<cplx> integrals(static_cast<std::size_t>(N), cplx{0.0});
  for (int m = 1; m <= N; ++m) {
    const double p_m = double(P[std::size_t(m) - 1].degree()) - 0.5 * double(3 * m + 2) * nq;
    const cplx tail = ev.value(m, 0, 0.0, nodes.front()) * nodes.front() / (p_m + 1.0);
    integrals[std::size_t(m) - 1] = tail + density_integral(ev, m, tol);
  }
  return integrals;
}

std::vector<cplx> riccati_density_values(const Characteristic& q, cplx x, cplx sqrt_at_x, int N) {
  if (N < 1 || N > 2 * series_order_max) throw invalid_argument("series order out of range");
  const auto P = riccati_polynomials(q, N);
  // Single-point branch: a degenerate one-sample continuation keyed to the
  // supplied root value.
  const OrientedPath seg = OrientedPath::line(x, x + cplx{1.0});
  const BranchedRoot br = continue_branch(q, seg, sqrt_at_x);
  const DensityEvaluator ev{&q, &br, &P};
  std::vector<cplx> v(static_cast<std::size_t>(N), cplx{0.0});
  for (int m = 1; m <= N; ++m) v[std::size_t(m) - 1] = ev.value(m, 0, 0.0, x);
  return v;
}

AsymptoticSeries chi_series(const StokesGraph& g, int k, const OrientedPath& path, cplx x, int N,
                            double cheb_tol) {
  if (N < 0 || N > series_order_max) throw invalid_argument("series order out of range");
  require_polyline(path);
  path.validate();
  const Sector& sec = g.sector(k);
  if (std::abs(path.end() - x) > 1e-9 * g.scale) {
    throw invalid_argument("chi_series: path must end at the evaluation point");
  }

  AsymptoticSeries res;
  res.signature = sec.signature;
  res.anchor_sector = sec.index;
  res.at_point = x;
  res.anchor_point = path.start();
  if (N == 0) {
    res.coeffs = {cplx{1.0}};
    return res;
  }
  res.coeffs = exp_series(log_coeffs_from_integrals(anchored_integrals(g, k, path, N, cheb_tol)));
  return res;
}

std::vector<cplx> iterated_I(const Characteristic& q, cplx x, cplx x0, const OrientedPath& path,
                             int N, double cheb_tol) {
  if (N < 0 || N > series_order_max) throw invalid_argument("series order out of range");
  require_polyline(path);
  path.validate();
  const double scale = 1.0 + std::max(std::abs(x), std::abs(x0));
  if (std::abs(path.start() - x0) > 1e-9 * scale || std::abs(path.end() - x) > 1e-9 * scale) {
    throw invalid_argument("iterated_I: path must run from x0 to x");
  }
  if (N == 0) return {cplx{1.0}};
  const BranchedRoot full = continue_branch(q, path, std::sqrt(q.q(x0)));
  const auto P = riccati_polynomials(q, N);
  const DensityEvaluator ev{&q, &full, &P};
  std::vector<cplx> integrals(static_cast<std::size_t>(N), cplx{0.0});
  for (int m = 1; m <= N; ++m) integrals[std::size_t(m) - 1] = density_integral(ev, m, cheb_tol);
  return exp_series(log_coeffs_from_integrals(integrals));
}

AsymptoticSeries series_mul(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  if (a.signature != b.signature) throw invalid_argument("series_mul: mismatched signatures");
  AsymptoticSeries r = a;
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  r.coeffs.assign(n, cplx{0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return r;
}

AsymptoticSeries series_reciprocal(const AsymptoticSeries& a) {
  if (a.coeffs.empty() || std::abs(a.coeffs[0]) < 1e-300) {
    throw numeric_error("series_reciprocal: vanishing leading coefficient");
  }
  AsymptoticSeries r = a;
  const std::size_t n = a.coeffs.size();
  r.coeffs.assign(n, cplx{0.0});
  r.coeffs[0] = 1.0 / a.coeffs[0];
  for (std::size_t k = 1; k < n; ++k) {
    cplx acc{0.0};
    for (std::size_t j = 1; j <= k; ++j) acc += a.coeffs[j] * r.coeffs[k - j];
    r.coeffs[k] = -acc / a.coeffs[0];
  }
  return r;
}

ExponentialRep rho_pm(const Characteristic& q, const OrientedPath& path, cplx x, int N,
                      cplx seed_sqrt, double cheb_tol) {
  if (N < 1 || N > 2 * series_order_max) throw invalid_argument("series order out of range");
  require_polyline(path);
  path.validate();
  cplx s0 = seed_sqrt;
  if (std::abs(s0) == 0.0) s0 = std::sqrt(q.q(path.start()));
  const BranchedRoot full = continue_branch(q, path, s0);
  const auto P = riccati_polynomials(q, N);
  const DensityEvaluator ev{&q, &full, &P};
  ExponentialRep out;
  out.at_point = x;
  for (int m = 1; m <= N; ++m) {
    const cplx integral = density_integral(ev, m, cheb_tol);
    if (m % 2 == 1)
      out.rho_minus.push_back(integral);
    else
      out.rho_plus.push_back(integral);
  }
  return out;
}

std::vector<cplx> log_chi_coeffs(const ExponentialRep& rep, int N) {
  std::vector<cplx> a(std::size_t(N) + 1, cplx{0.0});
  double two_m = 2.0;
  for (int m = 1; m <= N; ++m, two_m *= 2.0) {
    const std::size_t idx = std::size_t((m - 1) / 2);
    cplx integral{0.0};
    if (m % 2 == 1) {
      if (idx >= rep.rho_minus.size()) throw invalid_argument("log_chi_coeffs: rep too short");
      integral = rep.rho_minus[idx];
    } else {
      if (idx >= rep.rho_plus.size()) throw invalid_argument("log_chi_coeffs: rep too short");
      integral = rep.rho_plus[idx];
    }
    a[std::size_t(m)] = two_m * integral;
  }
  return a;
}

std::vector<cplx> exp_series(const std::vector<cplx>& log_coeffs) {
  const std::size_t n = log_coeffs.size();
  std::vector<cplx> e(n, cplx{0.0});
  if (n == 0) return e;
  e[0] = std::exp(log_coeffs[0]);
  for (std::size_t k = 1; k < n; ++k) {
    cplx acc{0.0};
    for (std::size_t j = 1; j <= k; ++j) acc += double(j) * log_coeffs[j] * e[k - j];
    e[k] = acc / double(k);
  }
  return e;
}

}  // namespace wkb
