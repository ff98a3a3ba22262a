#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "wkb/cheb.hpp"
#include "wkb/series.hpp"
#include "wkb/stokes.hpp"

using namespace wkb;

namespace {

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

StokesGraph airy_graph() { return build_graph(Characteristic(Polynomial({0.0, 1.0}))); }

OrientedPath must_path(const StokesGraph& g, int k, cplx x) {
  auto p = canonical_path(g, k, x);
  REQUIRE(p.has_value());
  return *p;
}

}  // namespace

TEST_CASE("piecewise Chebyshev engine reproduces exp on a two-piece path") {
  std::vector<cplx> nodes{0.0, 1.0, 2.0};
  auto f = PiecewiseCheb::build(nodes, [](std::size_t, double, cplx x) { return std::exp(x); });
  auto pt = [&](std::size_t seg, double t) { return nodes[seg] + t * (nodes[seg + 1] - nodes[seg]); };
  CHECK(std::abs(f.eval(0, 0.3) - std::exp(pt(0, 0.3))) < 1e-12 * std::exp(2.0));
  CHECK(std::abs(f.eval(1, 0.7) - std::exp(pt(1, 0.7))) < 1e-12 * std::exp(2.0));

  auto d = f.derivative();
  CHECK(std::abs(d.eval(0, 0.5) - std::exp(0.5)) < 1e-10 * std::exp(2.0));
  CHECK(std::abs(d.eval(1, 0.25) - std::exp(1.25)) < 1e-10 * std::exp(2.0));

  auto F = f.antiderivative(cplx{0.0});
  CHECK(std::abs(F.end_value() - (std::exp(2.0) - 1.0)) < 1e-12 * std::exp(2.0));
  CHECK(std::abs(F.eval(0, 1.0) - (std::exp(1.0) - 1.0)) < 1e-12 * std::exp(2.0));
  CHECK(std::abs(F.start_value()) < 1e-13);
}

TEST_CASE("piecewise Chebyshev handles a complex-direction segment") {
  std::vector<cplx> nodes{cplx{1.0, 0.0}, cplx{1.0, 1.0}};
  auto f = PiecewiseCheb::build(nodes, [](std::size_t, double, cplx x) { return 1.0 / x; });
  auto F = f.antiderivative(cplx{0.0});
  const cplx want = std::log(cplx{1.0, 1.0});  // log(1+i) - log(1)
  CHECK(std::abs(F.end_value() - want) < 1e-12);
}

TEST_CASE("linear characteristic: closed-form series coefficients") {
  auto g = airy_graph();
  const int sig = g.sector(1).signature;
  CHECK(sig == -1);

  for (double xr : {1.0, 1.5}) {
    const cplx x{xr, 0.0};
    auto s = chi_series(g, 1, must_path(g, 1, x), x, 4);
    CHECK(s.coeffs.size() == 5);
    CHECK(rel(s.coeffs[0], 1.0) < 1e-12);
    const cplx c1 = -(5.0 / 24.0) * std::pow(xr, -1.5);
    const cplx c2 = (385.0 / 1152.0) * std::pow(xr, -3.0);
    CHECK(rel(s.coeffs[1], c1) < 1e-11);
    CHECK(rel(s.coeffs[2], c2) < 1e-11);

    // In the natural large-action variable the first two terms are the
    // classical 5/72 and 385/10368 numbers.
    const cplx W = (2.0 / 3.0) * std::pow(xr, 1.5);
    const cplx u1 = s.coeffs[1] * (double(sig) * W / 2.0);
    const cplx u2 = s.coeffs[2] * std::pow(double(sig) * W / 2.0, 2.0);
    CHECK(rel(u1, 5.0 / 72.0) < 1e-10);
    CHECK(rel(u2, 385.0 / 10368.0) < 1e-10);
  }
}

TEST_CASE("translation identity relates coefficients at two points") {
  auto g = airy_graph();
  const cplx x0{1.0, 0.0}, x{2.0, 0.3};
  const int N = 12;
  auto sx = chi_series(g, 1, must_path(g, 1, x), x, N);
  auto s0 = chi_series(g, 1, must_path(g, 1, x0), x0, N);
  auto I = iterated_I(g.q, x, x0, OrientedPath::line(x0, x), N);

  for (int n = 0; n <= N; ++n) {
    cplx acc{0.0};
    for (int p = 0; p <= n; ++p) acc += s0.coeffs[std::size_t(p)] * I[std::size_t(n - p)];
    const double denom = std::max(1.0, std::abs(sx.coeffs[std::size_t(n)]));
    CHECK(std::abs(acc - sx.coeffs[std::size_t(n)]) / denom < 1e-8);
  }
}

TEST_CASE("log-derivative integrals exponentiate to the coefficient ratio") {
  auto g = airy_graph();
  const cplx x0{1.0, 0.0}, x{2.0, 0.0};
  const int N = 8;
  auto sx = chi_series(g, 1, must_path(g, 1, x), x, N);
  auto s0 = chi_series(g, 1, must_path(g, 1, x0), x0, N);
  auto ratio = series_mul(sx, series_reciprocal(s0));

  auto rep = rho_pm(g.q, OrientedPath::line(x0, x), x, N, sector_branch_at(g, 1, x0));
  auto expo = exp_series(log_chi_coeffs(rep, N));
  for (int n = 0; n <= N; ++n) {
    const double denom = std::max(1.0, std::abs(ratio.coeffs[std::size_t(n)]));
    CHECK(std::abs(expo[std::size_t(n)] - ratio.coeffs[std::size_t(n)]) / denom < 1e-9);
  }
}

TEST_CASE("even log-derivative densities are single-valued around a simple turning point") {
  Characteristic q(Polynomial({0.0, 1.0}));  // turning point at the origin
  std::vector<cplx> loop;
  const int M = 12;
  for (int j = 0; j <= M; ++j) {
    const double th = 2.0 * pi * double(j) / double(M);
    loop.push_back(std::polar(1.0, th));
  }
  auto rep = rho_pm(q, OrientedPath::through(loop), loop.front(), 8);
  REQUIRE(rep.rho_plus.size() >= 4);
  for (std::size_t n = 0; n < 4; ++n) CHECK(std::abs(rep.rho_plus[n]) < 1e-8);
}

TEST_CASE("series multiplication and reciprocal are mutually inverse") {
  AsymptoticSeries a;
  a.signature = -1;
  a.coeffs = {cplx{2.0, 0.5}, cplx{-1.0, 0.25}, cplx{0.3, -0.7}, cplx{4.0, 1.0}};
  auto id = series_mul(a, series_reciprocal(a));
  CHECK(rel(id.coeffs[0], 1.0) < 1e-14);
  for (std::size_t k = 1; k < id.coeffs.size(); ++k) CHECK(std::abs(id.coeffs[k]) < 1e-12);
}

TEST_CASE("coefficient path independence") {
  auto g = airy_graph();
  const cplx x{1.2, 0.4};
  auto p = must_path(g, 1, x);
  auto s1 = chi_series(g, 1, p, x, 6);

  // A second admissible route: nudge the interior nodes slightly.
  OrientedPath p2 = p;
  for (std::size_t j = 1; j + 1 < p2.nodes.size(); ++j) p2.nodes[j] += cplx{0.0, 0.02};
  auto s2 = chi_series(g, 1, p2, x, 6);
  for (std::size_t n = 0; n < s1.coeffs.size(); ++n) {
    const double denom = std::max(1.0, std::abs(s1.coeffs[n]));
    CHECK(std::abs(s1.coeffs[n] - s2.coeffs[n]) / denom < 1e-9);
  }
}
