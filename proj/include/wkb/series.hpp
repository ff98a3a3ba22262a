#pragma once

#include <vector>

#include "wkb/path.hpp"
#include "wkb/stokes.hpp"
#include "wkb/types.hpp"

namespace wkb {

inline constexpr int series_order_max = 24;

/// Truncated semiclassical series: coefficients c_m multiplying
/// (-sigma/(2 lambda))^m, evaluated at a point.
struct AsymptoticSeries {
  int signature = -1;
  std::vector<cplx> coeffs;
  int anchor_sector = 0;  // 0 when anchored at a finite point
  cplx anchor_point{0.0};
  cplx at_point{0.0};

  int order() const { return int(coeffs.size()) - 1; }
};

/// Coefficients of the recessive solution's chi-factor for sector k,
/// computed along a canonical path from the sector anchor down to x.
/// The integration is anchored at infinity (the path is extended radially
/// until the analytic tail is negligible) so chi_n(anchor) = 0 for n >= 1.
AsymptoticSeries chi_series(const StokesGraph& g, int k, const OrientedPath& path, cplx x, int N,
                            double cheb_tol = 1e-12);

/// Iterated integrals I_0..I_N anchored at a finite point x0, along a path
/// from x0 to x. I_0 = 1 and the recursion matches chi_series, so
/// chi_n(x) = sum_p chi_p(x0) I_{n-p}(x, x0).
std::vector<cplx> iterated_I(const Characteristic& q, cplx x, cplx x0, const OrientedPath& path,
                             int N, double cheb_tol = 1e-12);

/// Cauchy product / reciprocal of truncated series (truncated at min order).
AsymptoticSeries series_mul(const AsymptoticSeries& a, const AsymptoticSeries& b);
AsymptoticSeries series_reciprocal(const AsymptoticSeries& a);

/// Logarithmic-derivative (Riccati) decomposition: with u = chi'/chi
/// expanded as sum u_m lambda^{-m} and u_m = sigma^m v_m, rho_minus[n] is the
/// path integral of v_{2n+1} (odd 1/lambda powers) and rho_plus[n] of
/// v_{2n+2} (even powers). rho_plus is independent of the signature.
struct ExponentialRep {
  std::vector<cplx> rho_minus;
  std::vector<cplx> rho_plus;
  cplx at_point{0.0};
};

/// Integrates the Riccati densities along the path. seed_sqrt fixes the
/// branch of sqrt(q) at the path start (0 means principal).
ExponentialRep rho_pm(const Characteristic& q, const OrientedPath& path, cplx x, int N,
                      cplx seed_sqrt = cplx{0.0}, double cheb_tol = 1e-12);

/// log(chi) coefficients in t = -sigma/(2 lambda): a_m = 2^m * integral(v_m),
/// exposed for cross-checking rho_pm against chi_series.
std::vector<cplx> log_chi_coeffs(const ExponentialRep& rep, int N);

/// Integrals int v_m (m = 1..N) from the sector-k infinity down to the end of
/// path (which runs from the anchor region to the evaluation point), including
/// the radial extension and its analytic tail. chi_series is exp of
/// 2^m times these.
std::vector<cplx> anchored_integrals(const StokesGraph& g, int k, const OrientedPath& path, int N,
                                     double tol = 1e-12);

/// Pointwise density values v_1..v_N at x on the branch fixed by sqrt_at_x
/// (sqrt_at_x^2 = q(x)); chi'/chi = sum_m sigma^m v_m(x) lambda^{-m}.
std::vector<cplx> riccati_density_values(const Characteristic& q, cplx x, cplx sqrt_at_x, int N);

/// exp of a truncated series given its log-coefficients (a_0 = 0).
std::vector<cplx> exp_series(const std::vector<cplx>& log_coeffs);

}  // namespace wkb
