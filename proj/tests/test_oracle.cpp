#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "wkb/oracle.hpp"
#include "wkb/series.hpp"
#include "wkb/stokes.hpp"

using namespace wkb;

namespace {

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

StokesGraph airy_graph() { return build_graph(Characteristic(Polynomial({0.0, 1.0}))); }

// Closed-form recessive factor for q = x on the positive axis: the solution
// decaying at +infinity is Ai(lambda^{2/3} x), so
// chi(x) = 2 sqrt(pi) lambda^{1/6} x^{1/4} exp((2/3) lambda x^{3/2}) Ai(lambda^{2/3} x).
double airy_chi(double x, double lambda) {
  const double z = std::cbrt(lambda * lambda) * x;
  return 2.0 * std::sqrt(pi) * std::pow(lambda, 1.0 / 6.0) * std::pow(x, 0.25) *
         std::exp(2.0 / 3.0 * lambda * std::pow(x, 1.5)) * boost::math::airy_ai(z);
}

// Independent fixed-step Numerov shooting oracle for
// psi'' = (2V - 2E) psi on [-L, L]: returns the discrete Wronskian of the
// left- and right-decaying solutions at the midpoint (zero at eigenvalues).
double numerov_mismatch(const Polynomial& V, double E, double L, double h) {
  const int n = int(std::lround(2.0 * L / h));
  const int m = n / 2;
  auto k = [&](int i) {
    const double x = -L + h * double(i);
    return -(2.0 * (V(cplx{x, 0.0})).real() - 2.0 * E);
  };
  // Numerov in the transformed variable u_i = (1 + h^2 k_i / 12) psi_i:
  // u_{i+1} = A_i u_i - u_{i-1}, A_i = (2 - 5 h^2 k_i / 6) / (1 + h^2 k_i / 12).
  auto A = [&](int i) {
    return (2.0 - 5.0 * h * h * k(i) / 6.0) / (1.0 + h * h * k(i) / 12.0);
  };
  double la = 0.0, lb = 1.0;  // left sweep seeded deep in the barrier
  for (int i = 1; i <= m + 1; ++i) {
    const double next = A(i - 1) * lb - la;
    la = lb;
    lb = next;
    const double mag = std::abs(lb);
    if (mag > 1e100) { la /= mag; lb /= mag; }
  }
  double ra = 0.0, rb = 1.0;
  for (int i = n - 1; i >= m; --i) {
    const double next = A(i + 1) * rb - ra;
    ra = rb;
    rb = next;
    const double mag = std::abs(rb);
    if (mag > 1e100) { ra /= mag; rb /= mag; }
  }
  // la = uL_m, lb = uL_{m+1}; rb = uR_m, ra = uR_{m+1}
  const double w = la * ra - lb * rb;
  const double scale = std::abs(la * ra) + std::abs(lb * rb) + 1e-300;
  return w / scale;
}

double numerov_eigen(const Polynomial& V, double lo, double hi, double L, double h) {
  double flo = numerov_mismatch(V, lo, L, h);
  REQUIRE(flo * numerov_mismatch(V, hi, L, h) < 0.0);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = numerov_mismatch(V, mid, L, h);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("recessive factor matches the closed form for q = x") {
  const auto g = airy_graph();
  const double lambda = 5.0;
  for (int i = 0; i < 10; ++i) {
    const double x = 0.5 + 0.2 * double(i);
    const ChiSample cs = fundamental_chi(g, 1, cplx{x, 0.0}, cplx{lambda, 0.0});
    CHECK(rel(cs.chi, cplx{airy_chi(x, lambda)}) < 1e-8);
  }
}

TEST_CASE("solution Wronskian is constant along the integration path") {
  const auto g = airy_graph();
  const Characteristic& q = g.q;
  const cplx lambda{7.0, 0.0};
  const int sigma = g.sector(1).signature;
  const OrientedPath route = OrientedPath::through({cplx{1.0}, cplx{1.4, 0.3}, cplx{2.0, 0.1}});
  const cplx sb = sector_branch_at(g, 1, cplx{1.0});
  const auto bp = base_pair(q, sigma, lambda, route, sb, 1e-12);

  // psi-level Wronskian from the chi samples: psi = q^{-1/4} e^{sigma lambda W} chi,
  // log-derivative psi'/psi = -q'/(4q) + sigma lambda sqrt(q) + chi'/chi.
  const BranchedRoot br = continue_branch(q, route, sb);
  std::vector<cplx> w;
  for (std::size_t i = 0; i < route.nodes.size(); ++i) {
    const cplx x = route.nodes[i];
    const cplx s = br.sqrt_near(x);
    const cplx pref = -q.qp(x) / (4.0 * q.q(x)) + double(sigma) * lambda * s;
    const cplx W = action(br, route.start(), x).value;
    const cplx e = std::exp(double(sigma) * lambda * W) * std::pow(q.q(x), -0.25);
    const cplx p1 = e * bp.chi1[i].chi, d1 = e * (pref * bp.chi1[i].chi + bp.chi1[i].chi_prime);
    const cplx p2 = e * bp.chi2[i].chi, d2 = e * (pref * bp.chi2[i].chi + bp.chi2[i].chi_prime);
    w.push_back(p1 * d2 - d1 * p2);
  }
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(rel(w[i], w[0]) < 1e-9);
}

TEST_CASE("base pair reproduces its initial data and decomposes the fundamental solution") {
  const auto g = airy_graph();
  const cplx x0{1.0}, x{2.0};
  const cplx lambda{5.0, 0.0};
  const int sigma = g.sector(1).signature;
  const OrientedPath route = OrientedPath::line(x0, x);
  const cplx sb = sector_branch_at(g, 1, x0);
  const auto bp = base_pair(g.q, sigma, lambda, route, sb, 1e-13);

  CHECK(bp.chi1.front().chi == cplx{1.0});
  CHECK(bp.chi1.front().chi_prime == cplx{0.0});
  CHECK(bp.chi2.front().chi == cplx{0.0});
  CHECK(bp.chi2.front().chi_prime == cplx{1.0});

  const ChiSample a0 = fundamental_chi(g, 1, x0, lambda, 1e-13);
  const ChiSample ax = fundamental_chi(g, 1, x, lambda, 1e-13);
  const cplx recon = a0.chi * bp.chi1.back().chi + a0.chi_prime * bp.chi2.back().chi;
  CHECK(rel(recon, ax.chi) < 1e-9);
}

TEST_CASE("limit values are symmetric between communicating sectors") {
  const auto g = airy_graph();
  const cplx lambda{5.0, 0.0};
  const cplx c12 = chi_limit(g, 1, 2, lambda);
  const cplx c21 = chi_limit(g, 2, 1, lambda);
  CHECK(rel(c12, c21) < 1e-8);
}

TEST_CASE("sector-3 solution decomposes over sectors 1, 2 with the classical coefficients") {
  const auto g = airy_graph();
  const cplx lambda{10.0, 0.0};
  const ConnectionData cd = connection(g, 3, 1, 2, lambda);
  CHECK(cd.fit_residual < 1e-8);
  CHECK(rel(cd.alpha, cplx{1.0}) < 1e-6);
  const cplx c31 = chi_limit(g, 3, 1, lambda);
  CHECK(rel(cd.beta, -iu * c31) < 1e-6);

  // large-lambda trend of the subdominant coefficient: for q = x the limit
  // factor is exactly 1, so beta should sit at -i for every lambda
  for (double lam : {5.0, 10.0, 20.0, 40.0}) {
    const ConnectionData c = connection(g, 3, 1, 2, cplx{lam, 0.0});
    CHECK(std::abs(c.beta + iu) < 1e-5);
  }
}

TEST_CASE("harmonic-well energies and a quartic cross-check against an independent oracle") {
  const Polynomial harmonic({0.0, 0.0, 0.5});
  const auto levels = eigenvalues(harmonic, 1.0, 0.0, 6.0, 6);
  REQUIRE(levels.size() == 6);
  for (int n = 0; n < 6; ++n) {
    CHECK(std::abs(levels[std::size_t(n)].energy - (double(n) + 0.5)) < 1e-8);
    CHECK(levels[std::size_t(n)].wronskian_residual < 1e-6);
  }
  CHECK(eigenvalues(harmonic, 1.0, 0.0, 6.0, 0).empty());

  const Polynomial quartic({0.0, 0.0, 0.0, 0.0, 1.0});
  const auto ground = eigenvalues(quartic, 1.0, 0.2, 1.2, 1);
  REQUIRE(ground.size() == 1);
  const double independent = numerov_eigen(quartic, 0.2, 1.2, 3.8, 0.002);
  CHECK(std::abs(ground[0].energy - independent) < 1e-8);
}

TEST_CASE("pair-solution series: Borel sum, ODE oracle, and exponent reconstruction agree") {
  const auto g = airy_graph();
  const auto rep = lemma3_experiment(g, cplx{2.0}, cplx{1.0}, {10.0});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].resid_sum_oracle < 1e-5);
  CHECK(rep.rows[0].resid_sum_recon < 1e-5);
  CHECK(rep.rows[0].resid_oracle_recon < 1e-5);

  // Slope of the exponentially small gap, on a pair close enough that the gap
  // stays above the quadrature noise floor over the whole lambda range.
  const auto slope_rep = lemma3_experiment(g, cplx{1.6}, cplx{1.45}, {6.0, 9.0, 12.0, 15.0});
  CHECK(slope_rep.predicted_slope < 0.0);
  CHECK(std::abs(slope_rep.slope - slope_rep.predicted_slope) <
        0.1 * std::abs(slope_rep.predicted_slope));
}

TEST_CASE("input validation") {
  const Characteristic q(Polynomial({0.0, 1.0}));
  CHECK_THROWS_AS(solve_chi(q, 0, cplx{5.0}, OrientedPath::line(1.0, 2.0), 1.0, 0.0),
                  invalid_argument);
  CHECK_THROWS_AS(eigenvalues(Polynomial({0.0, iu}), 1.0, 0.0, 1.0, 1), invalid_argument);
  CHECK_THROWS_AS(eigenvalues(Polynomial({0.0, 0.0, 0.5}), 1.0, 1.0, 0.0, 1), invalid_argument);
}
