#pragma once

// High-accuracy ODE reference solutions ("oracles") for the recessive-factor
// equation and the original second-order problem, plus the derived
// experiments that compare them against series and Borel re-summations:
// connection coefficients, eigenvalue search, and the exponentially small
// two-point comparison.

#include <vector>

#include "wkb/path.hpp"
#include "wkb/potential.hpp"
#include "wkb/stokes.hpp"
#include "wkb/types.hpp"

namespace wkb {

/// One sample of the recessive factor chi along an integration path.
struct ChiSample {
  cplx x;
  cplx chi;
  cplx chi_prime;  // d(chi)/dx
  int sigma = -1;
  cplx lambda;
};

/// Integrates f (f chi)'' + 2 sigma lambda chi' = 0 with f = q^{-1/4} along
/// `path` (all-line), starting from chi(start) = chi0, chi'(start) = chi0p.
/// The branch of sqrt(q) is continued from seed_sqrt (0 => principal value at
/// the path start). Returns one sample per path node, in order.
/// Adaptive Runge-Kutta-Fehlberg 7(8), relative/absolute tolerance `ode_tol`.
std::vector<ChiSample> solve_chi(const Characteristic& q, int sigma, cplx lambda,
                                 const OrientedPath& path, cplx chi0, cplx chi0p,
                                 cplx seed_sqrt = cplx{0.0}, double ode_tol = 1e-10);

/// Recessive factor of the fundamental solution attached to sector k,
/// normalized to 1 at the sector's infinity: integrates the chi equation from
/// the far anchor down the canonical path to x, with the anchor initial data
/// corrected by the analytic tail of the asymptotic series. Throws if x is
/// outside the domain of canonicity of sector k.
ChiSample fundamental_chi(const StokesGraph& g, int k, cplx x, cplx lambda,
                          double ode_tol = 1e-10);

/// Full fundamental solution psi_k(x) = q^{-1/4} exp(sigma_k lambda W_k(x)) chi,
/// with W_k the action measured from the turning point attached to sector k
/// and the branch of q^{-1/4} continued from the sector anchor.
cplx assemble_psi(const StokesGraph& g, int k, cplx x, cplx lambda, cplx chi);

/// Pair of chi solutions with canonical initial data at x0:
/// chi1(x0) = 1, chi1'(x0) = 0 and chi2(x0) = 0, chi2'(x0) = 1,
/// each integrated along `path` (which must start at x0).
struct BasePair {
  std::vector<ChiSample> chi1;
  std::vector<ChiSample> chi2;
};
BasePair base_pair(const Characteristic& q, int sigma, cplx lambda, const OrientedPath& path,
                   cplx seed_sqrt = cplx{0.0}, double ode_tol = 1e-10);

/// Decomposition of the fundamental solution of sector `from` in the basis of
/// sectors basis_a, basis_b: psi_from = alpha psi_a + beta psi_b, obtained by
/// least squares on a probe set with a conditioning guard.
struct ConnectionData {
  int from = 0;
  int basis_a = 0;
  int basis_b = 0;
  cplx alpha;
  cplx beta;
  cplx lambda;
  double fit_residual = 0.0;
};
ConnectionData connection(const StokesGraph& g, int from, int basis_a, int basis_b, cplx lambda,
                          double ode_tol = 1e-10);

/// Limit value chi_{a->b}(lambda): the recessive factor of sector a evaluated
/// at the far anchor of sector b along a canonical path.
cplx chi_limit(const StokesGraph& g, int a, int b, cplx lambda, double ode_tol = 1e-10);

/// One bound-state energy: the Schrodinger problem psi'' = lambda^2 (2V - 2E) psi
/// on the real line, E found as a zero of the Wronskian of the two solutions
/// decaying at +infinity and -infinity.
struct EigenResult {
  double energy = 0.0;
  double wronskian_residual = 0.0;  // |W(E)| normalized by the solution scale
  int index = 0;                    // position within the requested bracket
};
std::vector<EigenResult> eigenvalues(const Polynomial& V, double lambda, double e_lo, double e_hi,
                                     int max_count, double eig_tol = 1e-10,
                                     double ode_tol = 1e-12);

/// Three-way comparison at fixed x, x0 between
///   (1) the Borel-Pade sum of the ratio series of chi_1(x)/chi_1(x0),
///   (2) the ODE oracle for the same ratio, and
///   (3) the single-valued-exponent reconstruction
///       C(x0, lambda) * chi(x) / chi(x0) with
///       C = exp(2 sum_n lambda^{-(2n+2)} int v_{2n+2}) down to x0,
/// for a list of lambda values, plus a fit of log|sum - oracle| vs lambda.
struct Lemma3Row {
  double lambda = 0.0;
  cplx borel_sum;
  cplx oracle;
  cplx reconstructed;
  double resid_sum_oracle = 0.0;
  double resid_sum_recon = 0.0;
  double resid_oracle_recon = 0.0;
};
struct Lemma3Report {
  std::vector<Lemma3Row> rows;
  double slope = 0.0;            // d log|borel_sum - oracle| / d lambda
  double predicted_slope = 0.0;  // -2 Re(xi(x) - xi(x0)) from the geometry
};
Lemma3Report lemma3_experiment(const StokesGraph& g, cplx x, cplx x0,
                               const std::vector<double>& lambdas, int order = 14,
                               double ode_tol = 1e-12);

}  // namespace wkb
