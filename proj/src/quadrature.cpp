#include "wkb/quadrature.hpp"

#include <array>
#include <cmath>

namespace wkb {

namespace {

// Gauss-Kronrod 15/7 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kr_x = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kr_w = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> gs_w = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
  cplx value;
  double error;
  double mass;  // integral of |f|, for a roundoff-aware error floor
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx fc = f(mid);
  cplx kron = kr_w[7] * fc;
  cplx gauss = gs_w[3] * fc;
  double mass = kr_w[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    cplx fp = f(mid + half * kr_x[j]);
    cplx fm = f(mid - half * kr_x[j]);
    kron += kr_w[j] * (fp + fm);
    mass += kr_w[j] * (std::abs(fp) + std::abs(fm));
    if (j % 2 == 1) gauss += gs_w[j / 2] * (fp + fm);
  }
  kron *= half;
  gauss *= half;
  mass *= std::abs(half);
  return {kron, std::abs(kron - gauss), mass};
}

cplx adapt(const std::function<cplx(double)>& f, double a, double b, double tol, double floor,
           int depth, double& spent, long& budget) {
  Panel p = gk15(f, a, b);
  // `floor` is the roundoff level of the whole integral: demanding less than
  // that from any panel only chases noise
  double want = std::max(tol, floor);
  if (p.error <= want + 1e-15 * p.mass || depth <= 0 || budget <= 0) {
    if (p.error > 64 * want + 1e-12 * p.mass)
      throw numeric_error("quadrature failed to converge on a panel");
    spent += p.error;
    return p.value;
  }
  --budget;
  double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, floor, depth - 1, spent, budget) +
         adapt(f, mid, b, 0.5 * tol, floor, depth - 1, spent, budget);
}

}  // namespace

cplx integrate(const std::function<cplx(double)>& f, double a, double b, double tol,
               int max_depth) {
  if (a == b) return cplx{0.0};
  double spent = 0;
  long budget = 200000;  // bisection budget; stops runaway subdivision
  if (max_depth <= 0) {  // single fixed panel, no refinement
    double unused = 0;
    long one = 0;
    return adapt(f, a, b, 1e300, 0.0, 0, unused, one);
  }
  double floor = 5e-16 * gk15(f, a, b).mass;
  return adapt(f, a, b, tol, floor, max_depth, spent, budget);
}

}  // namespace wkb
