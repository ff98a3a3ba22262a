#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wkb/types.hpp"

namespace wkb {

/// Complex-coefficient polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() : coeffs_{cplx{0.0}} {}
  explicit Polynomial(std::vector<cplx> coeffs);

  /// Parses an arithmetic expression in one variable (any single letter)
  /// built from +, -, *, /, ^, parentheses and numeric literals.
  /// Division is allowed by constants only; exponents must be non-negative
  /// integers. Throws parse_error with the offending position.
  static Polynomial parse(std::string_view text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx leading() const { return coeffs_.back(); }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0}; }

  /// Horner evaluation with compensated summation.
  cplx operator()(cplx x) const;

  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx c) const;

  /// Prints in ascending-power form, parseable by parse().
  std::string str() const;

 private:
  std::vector<cplx> coeffs_;
};

/// q(x,E) = 2V(x) - 2E with cached derivatives.
struct Characteristic {
  Polynomial base;   // q itself
  cplx energy{0.0};  // E
  Polynomial dq, d2q;

  Characteristic() = default;
  explicit Characteristic(Polynomial q_poly, cplx E = 0.0)
      : base(std::move(q_poly)), energy(E), dq(base.derivative()), d2q(dq.derivative()) {}

  int degree() const { return base.degree(); }
  cplx q(cplx x) const { return base(x); }
  cplx qp(cplx x) const { return dq(x); }
  cplx qpp(cplx x) const { return d2q(x); }
};

/// Builds q = 2V - 2E. Requires degree(V) >= 1.
Characteristic characteristic(const Polynomial& V, cplx E);

struct TurningPoint {
  cplx location;
  int multiplicity = 1;
};

struct TurningPointSet {
  std::vector<TurningPoint> points;
  int total_multiplicity() const;
  bool all_simple() const;
  /// Diameter of the set (0 for a single point).
  double diameter() const;
};

/// All roots of a polynomial by Aberth simultaneous iteration with a
/// companion-matrix fallback. Roots are Newton-polished.
std::vector<cplx> poly_roots(const Polynomial& p, double tol = 1e-13, int max_iter = 200);

/// Roots of q with multiplicity detection by clustering.
TurningPointSet turning_points(const Characteristic& q, double root_tol = 1e-10);

/// omega(x) = q''/(4 q^{3/2}) - 5 q'^2/(16 q^{5/2}) on the branch fixed by
/// sqrt_q (which must satisfy sqrt_q^2 = q(x)). Throws near turning points.
cplx omega(const Characteristic& q, cplx x, cplx sqrt_q);

/// omega_tilde(xi(x)) = omega(x) * q^{-1/2}(x) on the same branch.
cplx omega_tilde(const Characteristic& q, cplx x, cplx sqrt_q);

}  // namespace wkb
