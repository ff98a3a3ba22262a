#pragma once

#include <functional>

#include "wkb/types.hpp"

namespace wkb {

/// Adaptive complex-valued quadrature of f over the real interval [a, b]
/// (Gauss-Kronrod 15-point panels, bisection to tolerance).
/// `tol` is an absolute tolerance on the whole integral; relative error is
/// additionally bounded by tol against the accumulated magnitude.
cplx integrate(const std::function<cplx(double)>& f, double a, double b, double tol = 1e-12,
               int max_depth = 48);

}  // namespace wkb
