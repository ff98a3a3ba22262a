#include "wkb/cheb.hpp"

#include <algorithm>
#include <cmath>

namespace wkb {

namespace {

// Chebyshev coefficients from values at the Lobatto points xi_j = cos(j pi/M),
// j = 0..M (naive DCT-I; segment degrees stay modest).
std::vector<cplx> lobatto_to_coef(const std::vector<cplx>& v) {
  int M = int(v.size()) - 1;
  std::vector<cplx> c(M + 1);
  for (int k = 0; k <= M; ++k) {
    cplx acc = 0.5 * (v[0] + (k % 2 ? -1.0 : 1.0) * v[M]);
    for (int j = 1; j < M; ++j) acc += v[j] * std::cos(k * j * pi / M);
    c[k] = acc * (2.0 / M);
    if (k == 0 || k == M) c[k] *= 0.5;
  }
  return c;
}

cplx clenshaw(const std::vector<cplx>& c, double xi) {
  cplx b1{0.0}, b2{0.0};
  for (int k = int(c.size()) - 1; k >= 1; --k) {
    cplx b0 = c[k] + 2.0 * xi * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + xi * b1 - b2;
}

double tail_size(const std::vector<cplx>& c) {
  int M = int(c.size()) - 1;
  double last = 0;
  for (int k = std::max(0, M - 1); k <= M; ++k) last = std::max(last, std::abs(c[k]));
  return last;
}

double coef_max(const std::vector<cplx>& c) {
  double m = 0;
  for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

PiecewiseCheb PiecewiseCheb::build(const std::vector<cplx>& nodes,
                                   const std::function<cplx(std::size_t, double, cplx)>& f,
                                   double tol, int max_degree) {
  if (nodes.size() < 2) throw invalid_argument("piecewise interpolant needs >= 2 nodes");
  PiecewiseCheb out;
  for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
    cplx a = nodes[seg], b = nodes[seg + 1];
    cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<cplx> coef;
    for (int M = 16; M <= max_degree; M *= 2) {
      std::vector<cplx> v(M + 1);
      for (int j = 0; j <= M; ++j) {
        double xi = std::cos(j * pi / M);
        double t = 0.5 * (xi + 1.0);
        v[j] = f(seg, t, mid + half * xi);
      }
      coef = lobatto_to_coef(v);
      double scale = coef_max(coef);
      if (tail_size(coef) <= tol * (scale + 1e-300) || scale == 0.0) {
        // trim negligible tail
        int keep = int(coef.size());
        while (keep > 2 && std::abs(coef[keep - 1]) <= tol * (scale + 1e-300)) --keep;
        coef.resize(keep);
        break;
      }
      if (2 * M > max_degree)
        throw numeric_error("interpolant failed to resolve a segment to tolerance");
    }
    out.pieces_.push_back({a, b, std::move(coef)});
  }
  return out;
}

cplx PiecewiseCheb::eval(std::size_t seg, double t) const {
  const ChebPiece& p = pieces_.at(seg);
  return clenshaw(p.coef, 2.0 * t - 1.0);
}

PiecewiseCheb PiecewiseCheb::derivative() const {
  PiecewiseCheb out;
  for (const auto& p : pieces_) {
    int M = int(p.coef.size()) - 1;
    std::vector<cplx> d(std::max(M, 1) + 1, cplx{0.0});
    // recurrence d_{k-1} = d_{k+1} + 2k c_k (in the xi variable)
    std::vector<cplx> dd(M + 2, cplx{0.0});
    for (int k = M; k >= 1; --k) dd[k - 1] = ((k + 1 <= M) ? dd[k + 1] : cplx{0.0}) + 2.0 * double(k) * p.coef[k];
    dd[0] *= 0.5;
    dd.resize(std::max(M, 1));
    // chain rule: dx = half * dxi
    cplx half = 0.5 * (p.b - p.a);
    for (auto& c : dd) c /= half;
    out.pieces_.push_back({p.a, p.b, std::move(dd)});
  }
  return out;
}

PiecewiseCheb PiecewiseCheb::antiderivative(cplx value_at_start) const {
  PiecewiseCheb out;
  cplx running = value_at_start;
  for (const auto& p : pieces_) {
    int M = int(p.coef.size()) - 1;
    cplx half = 0.5 * (p.b - p.a);
    std::vector<cplx> a(M + 2, cplx{0.0});
    for (int k = 0; k <= M; ++k) a[k] = p.coef[k] * half;  // d xi -> dx
    std::vector<cplx> A(M + 2, cplx{0.0});
    for (int k = 1; k <= M + 1; ++k) {
      cplx lo = a[k - 1];
      cplx hi = (k + 1 <= M) ? a[k + 1] : cplx{0.0};
      if (k == 1) lo *= 2.0;  // T_0 contributes with weight 2 in the recurrence
      A[k] = (lo - hi) / (2.0 * double(k));
    }
    // fix the constant so the value at xi = -1 equals the running integral
    cplx at_start{0.0};
    for (int k = 1; k <= M + 1; ++k) at_start += A[k] * ((k % 2) ? -1.0 : 1.0);
    A[0] = running - at_start;
    out.pieces_.push_back({p.a, p.b, std::move(A)});
    running = out.pieces_.back().coef.empty() ? running : clenshaw(out.pieces_.back().coef, 1.0);
  }
  return out;
}

double PiecewiseCheb::coef_scale() const {
  double m = 0;
  for (const auto& p : pieces_) m = std::max(m, coef_max(p.coef));
  return m;
}

}  // namespace wkb
