#pragma once

#include <functional>
#include <vector>

#include "wkb/types.hpp"

namespace wkb {

/// One Chebyshev interpolant on the straight segment [a, b] in the x-plane.
struct ChebPiece {
  cplx a, b;
  std::vector<cplx> coef;  // Chebyshev-T coefficients, f(xi) = sum coef[k] T_k(xi)
};

/// Piecewise-Chebyshev function along a polyline of straight segments.
/// Degrees adapt per segment until the coefficient tail is below tol.
class PiecewiseCheb {
 public:
  /// f receives (segment index, t in [0,1], x position) and returns the value.
  static PiecewiseCheb build(const std::vector<cplx>& nodes,
                             const std::function<cplx(std::size_t, double, cplx)>& f,
                             double tol = 1e-12, int max_degree = 1024);

  std::size_t segments() const { return pieces_.size(); }
  const std::vector<ChebPiece>& pieces() const { return pieces_; }

  cplx eval(std::size_t seg, double t) const;  // t in [0,1] along segment seg
  cplx start_value() const { return eval(0, 0.0); }
  cplx end_value() const { return eval(pieces_.size() - 1, 1.0); }

  /// d/dx along the path (per segment, spectral).
  PiecewiseCheb derivative() const;

  /// Cumulative integral along the path from the path start, which takes the
  /// supplied value there.
  PiecewiseCheb antiderivative(cplx value_at_start = cplx{0.0}) const;

  /// Largest coefficient magnitude across all pieces (a scale for tolerances).
  double coef_scale() const;

 private:
  std::vector<ChebPiece> pieces_;
};

}  // namespace wkb
