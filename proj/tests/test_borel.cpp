#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "wkb/borel.hpp"
#include "wkb/series.hpp"
#include "wkb/stokes.hpp"

using namespace wkb;

namespace {

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

StokesGraph airy_graph() { return build_graph(Characteristic(Polynomial({0.0, 1.0}))); }

AsymptoticSeries airy_chi(const StokesGraph& g, cplx x, int N) {
  auto p = canonical_path(g, 1, x);
  REQUIRE(p.has_value());
  return chi_series(g, 1, *p, x, N);
}

BorelSeries raw_borel(std::vector<cplx> coeffs) {
  BorelSeries b;
  b.coeffs = std::move(coeffs);
  b.source.coeffs.assign(b.coeffs.size(), cplx{0.0});
  return b;
}

AsymptoticSeries raw_series(std::vector<cplx> coeffs) {
  AsymptoticSeries a;
  a.signature = -1;
  a.coeffs = std::move(coeffs);
  return a;
}

}  // namespace

TEST_CASE("Borel transform: definition and first coefficient") {
  auto a = raw_series({cplx{1.0}, cplx{3.0, -1.0}, cplx{0.5}, cplx{-2.0}});
  auto b = to_borel(a);
  CHECK(rel(b.coeffs[0], 1.0) < 1e-15);
  CHECK(rel(b.coeffs[1], -a.coeffs[1]) < 1e-15);           // b_1 = -c_1
  CHECK(rel(b.coeffs[2], a.coeffs[2] / 2.0) < 1e-15);      // (+1)/2!
  CHECK(rel(b.coeffs[3], -a.coeffs[3] / 6.0) < 1e-15);     // (-1)/3!

  auto g = airy_graph();
  auto chi = airy_chi(g, cplx{1.0}, 3);
  auto bc = to_borel(chi);
  // b_1 = -c_1 = (5/24) x^{-3/2} at x = 1
  CHECK(rel(bc.coeffs[1], 5.0 / 24.0) < 1e-10);
}

TEST_CASE("Borel radius matches |xi| for the linear characteristic") {
  auto g = airy_graph();
  const cplx x{1.0};
  auto b = to_borel(airy_chi(g, x, 20));
  const double xi_mag = 2.0 / 3.0;
  CHECK(b.radius_estimate / xi_mag > 0.98);
  CHECK(b.radius_estimate / xi_mag < 1.02);
}

TEST_CASE("Pade reproduces an exactly rational series") {
  // f(s) = (1 + 2 s) / (1 - 0.5 s)
  std::vector<cplx> c(8);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = std::pow(0.5, double(k));
    if (k >= 1) c[k] += 2.0 * std::pow(0.5, double(k - 1));
  }
  auto p = pade(raw_borel(c), 1, 1);
  CHECK(p.M == 1);
  CHECK(rel(p.denominator[1], -0.5) < 1e-12);
  for (double s : {0.1, -0.7, 1.2}) {
    const cplx want = (1.0 + 2.0 * s) / (1.0 - 0.5 * s);
    CHECK(rel(p.eval(s), want) < 1e-12);
  }
  REQUIRE(p.poles.size() == 1);
  CHECK(rel(p.poles[0], 2.0) < 1e-10);
}

TEST_CASE("Pade degrades gracefully on polynomial input") {
  auto p = pade(raw_borel({cplx{1.0}, cplx{0.5}, cplx{0.0}, cplx{0.0}, cplx{0.0}}), 1, 2);
  CHECK(p.M <= 1);
  for (double s : {0.3, -1.0}) CHECK(rel(p.eval(s), 1.0 + 0.5 * s) < 1e-10);
}

TEST_CASE("nearest Pade pole tracks the moving branch point") {
  auto g = airy_graph();
  for (double xr : {0.8, 1.0, 1.5}) {
    auto b = to_borel(airy_chi(g, cplx{xr}, 20));
    auto p = pade(b, 10, 10);
    double best = 1e300;
    cplx pole{0.0};
    for (std::size_t i = 0; i < p.poles.size(); ++i) {
      if (p.froissart[i]) continue;
      if (std::abs(p.poles[i]) < best) {
        best = std::abs(p.poles[i]);
        pole = p.poles[i];
      }
    }
    const double xi_mag = (2.0 / 3.0) * std::pow(xr, 1.5);
    CHECK(std::abs(best / xi_mag - 1.0) < 0.02);
    CHECK(std::abs(std::arg(pole)) < 3.0 * pi / 180.0);
  }
}

TEST_CASE("singularity forecast: moving and fixed families") {
  auto g = airy_graph();
  auto f = predicted_singularities(g, cplx{1.0});
  CHECK(f.fixed.empty());
  CHECK(rel(f.moving, 2.0 / 3.0) < 1e-9);
  auto fnear = predicted_singularities(g, cplx{1e-3});
  CHECK(std::abs(fnear.moving) < 1e-4);

  auto g2 = build_graph(Characteristic(Polynomial({-1.0, 0.0, 1.0})));  // x^2 - 1
  auto f2 = predicted_singularities(g2, cplx{2.0});
  REQUIRE(!f2.fixed.empty());
  bool found = false;
  for (const cplx& z : f2.fixed) {
    if (std::abs(z.real()) < 1e-7 && std::abs(std::abs(z.imag()) - pi / 2.0) < 1e-7) found = true;
  }
  CHECK(found);
}

TEST_CASE("Laplace normalization and term-by-term identity") {
  const cplx lambda{5.0, 0.0};
  auto one = laplace_sum(raw_borel({cplx{1.0}, cplx{0.0}}), lambda, pi);
  CHECK(rel(one.value, 1.0) < 1e-11);
  auto lin = laplace_sum(raw_borel({cplx{0.0}, cplx{-1.0}}), lambda, pi);
  CHECK(rel(lin.value, 1.0 / (2.0 * lambda)) < 1e-11);

  auto g = airy_graph();
  auto chi = airy_chi(g, cplx{1.5}, 10);
  auto b = to_borel(chi);
  auto got = laplace_sum(b, lambda, pi);
  cplx partial{0.0};
  for (std::size_t n = 0; n < chi.coeffs.size(); ++n) {
    partial += chi.coeffs[n] / std::pow(2.0 * lambda, double(n));
  }
  CHECK(rel(got.value, partial) < 1e-9);
}

TEST_CASE("Laplace ray independence and pole safety") {
  // f = 1/(1 - 0.5 s), pole at s = 2
  std::vector<cplx> c(8);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::pow(0.5, double(k));
  auto p = pade(raw_borel(c), 3, 3);
  const cplx lambda{3.0, 0.0};
  auto r1 = laplace_sum(p, lambda, pi - 0.4);
  auto r2 = laplace_sum(p, lambda, pi + 0.4);
  CHECK(std::abs(r1.value - r2.value) < r1.error + r2.error);

  CHECK_THROWS_AS(laplace_sum(p, cplx{-2.0, 0.0}, 0.0), numeric_error);  // pole on ray
  CHECK_THROWS_AS(laplace_sum(p, lambda, 0.0), numeric_error);           // growing kernel
}

TEST_CASE("convolution algebra at coefficient level") {
  auto a = raw_series({cplx{1.0}, cplx{0.4, 0.3}, cplx{-0.2}, cplx{1.5, -0.5}});
  auto b = raw_series({cplx{2.0}, cplx{-1.0}, cplx{0.7, 0.2}, cplx{0.1}});
  auto fa = to_borel(a), fb = to_borel(b);

  // unit of the algebra
  auto unit = raw_borel({cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{0.0}});
  auto fu = convolve(fa, unit);
  for (std::size_t k = 0; k < fa.coeffs.size(); ++k) CHECK(rel(fu.coeffs[k], fa.coeffs[k]) < 1e-15);

  // Borel(a) * Borel(b) = Borel(a b)
  auto prod = convolve(fa, fb);
  auto want = to_borel(series_mul(a, b));
  for (std::size_t k = 0; k < prod.coeffs.size(); ++k) {
    CHECK(std::abs(prod.coeffs[k] - want.coeffs[k]) <= 1e-14 * (1.0 + std::abs(want.coeffs[k])));
  }

  // commutativity and associativity
  auto ab = convolve(fa, fb), ba = convolve(fb, fa);
  for (std::size_t k = 0; k < ab.coeffs.size(); ++k) CHECK(rel(ab.coeffs[k], ba.coeffs[k]) < 1e-14);
  auto c3 = raw_borel({cplx{0.3}, cplx{1.0, 1.0}, cplx{-0.6}, cplx{0.25}});
  auto l = convolve(convolve(fa, fb), c3);
  auto r = convolve(fa, convolve(fb, c3));
  for (std::size_t k = 0; k < l.coeffs.size(); ++k)
    CHECK(std::abs(l.coeffs[k] - r.coeffs[k]) <= 1e-14 * (1.0 + std::abs(r.coeffs[k])));
}

TEST_CASE("topological expansion: order 0 kernel") {
  auto g = airy_graph();
  const cplx x{1.0};
  auto path = canonical_path(g, 1, x);
  REQUIRE(path.has_value());

  CHECK(rel(phi_topological(g, *path, cplx{0.0}, 0), 1.0) < 1e-14);

  const cplx Omega = omega_integral(g, *path);
  auto b = to_borel(airy_chi(g, x, 2));
  CHECK(rel(Omega, b.coeffs[1]) < 1e-11);  // Omega = b_1 = 5/24 at x = 1
  CHECK(rel(Omega, 5.0 / 24.0) < 1e-10);

  const double h = 1e-4;
  const cplx deriv =
      (phi_topological(g, *path, cplx{h}, 0) - phi_topological(g, *path, cplx{-h}, 0)) / (2.0 * h);
  CHECK(std::abs(deriv - Omega) < 1e-9);
}

TEST_CASE("topological expansion: order 1 scaling and contour guard") {
  auto g = airy_graph();
  const cplx x{1.0};
  auto path = canonical_path(g, 1, x);
  REQUIRE(path.has_value());

  CHECK(std::abs(phi_topological(g, *path, cplx{0.0}, 1)) == 0.0);
  const cplx p1 = phi_topological(g, *path, cplx{0.02}, 1);
  const cplx p2 = phi_topological(g, *path, cplx{0.04}, 1);
  CHECK(std::abs(p1) > 0.0);
  CHECK(std::abs(p1 / p2) > 0.15);
  CHECK(std::abs(p1 / p2) < 0.40);

  // straight contour through the moving branch point xi = 2/3 is refused
  CHECK_THROWS_AS(phi_topological(g, *path, cplx{0.7}, 1), numeric_error);
}
