#pragma once

#include <vector>

#include "wkb/series.hpp"
#include "wkb/stokes.hpp"
#include "wkb/types.hpp"

namespace wkb {

/// Borel transform of an AsymptoticSeries: coefficients b_n multiplying s^n,
/// with b_n = c_n (-1)^n / n! relative to the source coefficients.
struct BorelSeries {
  std::vector<cplx> coeffs;
  AsymptoticSeries source;
  double radius_estimate = 0.0;

  int order() const { return int(coeffs.size()) - 1; }
};

BorelSeries to_borel(const AsymptoticSeries& a);

/// Re-expresses the series in powers of 1/(2 lambda): its coefficients
/// multiply (-sigma/(2 lambda))^m, so for signature +1 the odd coefficients
/// change sign. laplace_sum of to_borel of the result recovers the series
/// value; summing without this step mixes the two signature conventions.
AsymptoticSeries normalized_for_laplace(const AsymptoticSeries& a);

/// Rational [L/M] approximant of a truncated power series, with pole/residue
/// data and Froissart-doublet flags (pole-zero pairs closer than
/// fd_tol = 1e-3 * radius_estimate are reported but flagged as spurious).
struct PadeApproximant {
  int L = 0, M = 0;
  std::vector<cplx> numerator;    // ascending
  std::vector<cplx> denominator;  // ascending, denominator[0] = 1
  std::vector<cplx> poles;
  std::vector<cplx> residues;
  std::vector<bool> froissart;

  cplx eval(cplx s) const;
};

PadeApproximant pade(const BorelSeries& b, int L, int M);

/// Expected branch points of the Borel function in the s-plane: the moving
/// one at xi(x) and the fixed family of action integrals between pairs of
/// turning points joined by finite graph lines.
struct SingularityForecast {
  cplx moving;
  std::vector<cplx> fixed;
};

SingularityForecast predicted_singularities(const StokesGraph& g, cplx x);

struct LaplaceResult {
  cplx value;
  double error = 0.0;
};

/// Directional Laplace integral 2 lambda int e^{2 lambda s} f(s) ds along the
/// ray s = t e^{i ray_angle}, t from infinity to 0. Requires decay of the
/// kernel along the ray; refuses rays passing within ray_margin (relative to
/// the pole modulus) of a genuine pole.
LaplaceResult laplace_sum(const PadeApproximant& p, cplx lambda, double ray_angle,
                          double ray_margin = 0.05, double tol = 1e-12);
/// Same for the truncated Borel polynomial (entire; no pole checks). Equals
/// the truncated lambda-series term by term.
LaplaceResult laplace_sum(const BorelSeries& b, cplx lambda, double ray_angle,
                          double tol = 1e-12);

/// Laplace integrals along the two rays straddling the direction cut_angle
/// (offset by +-delta); jump = plus - minus is the contribution of the cut.
struct CutSum {
  LaplaceResult plus, minus;
  cplx jump;
};
CutSum laplace_cut(const PadeApproximant& p, cplx lambda, double cut_angle, double delta,
                   double ray_margin = 0.05, double tol = 1e-12);

/// Convolution in the Borel plane, (f*g)(s) = d/ds int_0^s f(s') g(s-s') ds',
/// at coefficient level: h_k = sum_{i+j=k} f_i g_j i! j! / k!.
BorelSeries convolve(const BorelSeries& f, const BorelSeries& g);

/// Leading terms of the topological expansion of the Borel function.
/// omega_path runs from the sector-1 anchor region to x; internally
/// Omega = int omega_tilde is accumulated along it (with the radial tail) and
/// xi = xi_of(g, x, omega_path). Order 0 is I_0(sqrt(4 s Omega)); order 1 is
/// the double contour integral of the recurrence over straight eta-contours
/// 0 -> s. Throws when a straight contour passes within contour_margin
/// (relative to |xi|) of a forecast branch point.
cplx phi_topological(const StokesGraph& g, const OrientedPath& omega_path, cplx s, int order,
                     double contour_margin = 0.05);

/// Omega(xi(x)) = int omega_tilde from the sector-1 infinity down to x; equals
/// the first Borel coefficient b_1 of the sector-1 chi series.
cplx omega_integral(const StokesGraph& g, const OrientedPath& omega_path);

}  // namespace wkb
