#include "wkb/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wkb/quadrature.hpp"

namespace wkb {

OrientedPath OrientedPath::line(cplx a, cplx b) {
  OrientedPath p;
  p.nodes = {a, b};
  return p;
}

OrientedPath OrientedPath::through(std::vector<cplx> pts) {
  OrientedPath p;
  p.nodes = std::move(pts);
  return p;
}

OrientedPath OrientedPath::circle(cplx center, double radius, int pieces, int circuits,
                                  cplx start_dir) {
  OrientedPath p;
  p.arc_center = center;
  double th0 = std::arg(start_dir);
  int total = pieces * circuits;
  for (int k = 0; k <= total; ++k) {
    // keep nodes strictly short of a half turn apart so the sweep is unambiguous
    double th = th0 + 2 * pi * k / pieces;
    p.nodes.push_back(center + radius * std::exp(iu * th));
  }
  p.kinds.assign(total, Kind::arc);
  return p;
}

cplx OrientedPath::point(std::size_t j, double t) const {
  cplx a = nodes[j], b = nodes[j + 1];
  if (kind(j) == Kind::line) return a + (b - a) * t;
  cplx u = a - arc_center, v = b - arc_center;
  double r0 = std::abs(u), r1 = std::abs(v);
  double th0 = std::arg(u);
  double dth = wrap_angle(std::arg(v) - th0);
  double r = (1 - t) * r0 + t * r1;
  return arc_center + r * std::exp(iu * (th0 + t * dth));
}

cplx OrientedPath::velocity(std::size_t j, double t) const {
  cplx a = nodes[j], b = nodes[j + 1];
  if (kind(j) == Kind::line) return b - a;
  cplx u = a - arc_center, v = b - arc_center;
  double r0 = std::abs(u), r1 = std::abs(v);
  double th0 = std::arg(u);
  double dth = wrap_angle(std::arg(v) - th0);
  double r = (1 - t) * r0 + t * r1;
  return ((r1 - r0) + iu * r * dth) * std::exp(iu * (th0 + t * dth));
}

OrientedPath OrientedPath::reversed() const {
  OrientedPath p = *this;
  std::reverse(p.nodes.begin(), p.nodes.end());
  if (!p.kinds.empty()) std::reverse(p.kinds.begin(), p.kinds.end());
  return p;
}

double OrientedPath::length() const {
  double L = 0;
  for (std::size_t j = 0; j < segments(); ++j) {
    // 8-point chord sum is plenty for bookkeeping purposes
    cplx prev = point(j, 0.0);
    for (int k = 1; k <= 8; ++k) {
      cplx cur = point(j, k / 8.0);
      L += std::abs(cur - prev);
      prev = cur;
    }
  }
  return L;
}

void OrientedPath::validate() const {
  if (nodes.size() < 2) throw invalid_argument("path needs at least two nodes");
  if (!kinds.empty() && kinds.size() != nodes.size() - 1)
    throw invalid_argument("segment kind count mismatch");
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
    if (nodes[j] == nodes[j + 1]) throw invalid_argument("degenerate path segment");
}

// ---------------------------------------------------------------------------

namespace {

double coeff_scale(const Characteristic& q) {
  double s = 0;
  for (const auto& c : q.base.coeffs()) s = std::max(s, std::abs(c));
  return s + 1.0;
}

}  // namespace

BranchedRoot::BranchedRoot(const Characteristic& q, OrientedPath path, cplx initial)
    : q_(&q), path_(std::move(path)) {
  path_.validate();
  cplx q0 = q.q(path_.start());
  if (std::abs(initial * initial - q0) > 1e-10 * (std::abs(q0) + 1e-30) &&
      std::abs(initial * initial - q0) > 1e-10 * coeff_scale(q))
    throw invalid_argument("initial value is not a square root of q at the path start");
  march(initial);
  accumulate();
}

void BranchedRoot::march(cplx initial) {
  samples_.push_back({0, 0.0, path_.start(), initial, 0.0, cplx{0.0}});
  cplx prev_sq = initial;
  double amp = std::abs(initial);  // largest |sqrt_q| seen so far
  for (std::size_t j = 0; j < path_.segments(); ++j) {
    double t = 0.0;
    if (j > 0) {
      // node value re-recorded at the head of the new segment
      samples_.push_back({j, 0.0, path_.point(j, 0.0), prev_sq, samples_.back().arclen, cplx{0.0}});
    }
    double h = 1.0 / 16.0;
    while (t < 1.0) {
      double tn = std::min(1.0, t + h);
      for (;;) {
        cplx x = path_.point(j, tn);
        cplx sp = std::sqrt(q_->q(x));
        double ac = std::abs(sp), ap = std::abs(prev_sq);
        cplx cand = (std::abs(sp - prev_sq) <= std::abs(-sp - prev_sq)) ? sp : -sp;
        // Starting at a turning point the branch is ambiguous: take the
        // principal root on the first real step and continue from there.
        if (ap < 1e-9 * (amp + ac)) cand = sp;
        // Relative jump |Δ|/(|a|+|b|) is sin(Δarg/2) for pure rotations and
        // stays small when the value shrinks into a turning-point endpoint.
        bool near_zero = std::min(ac, ap) < 1e-6 * (amp + 1e-300);
        double jump = near_zero ? 0.0 : std::abs(cand - prev_sq) / (ac + ap);
        if (jump < 0.5) {
          double step_len = std::abs(x - samples_.back().x);
          samples_.push_back({j, tn, x, cand, samples_.back().arclen + step_len, cplx{0.0}});
          prev_sq = cand;
          amp = std::max(amp, ac);
          if (jump < 0.15 && h < 1.0 / 16.0) h *= 2;
          break;
        }
        h *= 0.5;
        tn = std::min(1.0, t + h);
        if (h < 1e-9)
          throw numeric_error("branch continuation stalled (path grazes a turning point)");
      }
      t = tn;
    }
  }
}

cplx BranchedRoot::sqrt_at(std::size_t seg, double t) const {
  // nearest stored sample in parameter order (samples are sorted)
  double key = double(seg) + t;
  auto it = std::lower_bound(samples_.begin(), samples_.end(), key,
                             [](const BranchSample& s, double k) {
                               return double(s.seg) + s.t < k;
                             });
  const BranchSample* best;
  if (it == samples_.begin()) {
    best = &*it;
  } else if (it == samples_.end()) {
    best = &samples_.back();
  } else {
    const BranchSample* hi = &*it;
    const BranchSample* lo = &*(it - 1);
    best = (key - (double(lo->seg) + lo->t) <= (double(hi->seg) + hi->t) - key) ? lo : hi;
    // a turning-point sample (sqrt ~ 0) cannot orient the branch; defer to
    // the non-degenerate neighbor
    const BranchSample* other = (best == lo) ? hi : lo;
    if (std::abs(best->sqrt_q) < 1e-3 * std::abs(other->sqrt_q)) best = other;
  }
  cplx x = path_.point(seg, t);
  cplx sp = std::sqrt(q_->q(x));
  return (std::abs(sp - best->sqrt_q) <= std::abs(-sp - best->sqrt_q)) ? sp : -sp;
}

cplx BranchedRoot::sqrt_near(cplx x) const {
  const BranchSample* best = &samples_.front();
  double bestd = std::numeric_limits<double>::max();
  for (const auto& s : samples_) {
    double d = std::abs(s.x - x);
    if (d < bestd) {
      bestd = d;
      best = &s;
    }
  }
  cplx sp = std::sqrt(q_->q(x));
  return (std::abs(sp - best->sqrt_q) <= std::abs(-sp - best->sqrt_q)) ? sp : -sp;
}

void BranchedRoot::accumulate() {
  // cumulative action at each sample by one fixed GK panel per gap
  for (std::size_t k = 1; k < samples_.size(); ++k) {
    BranchSample& cur = samples_[k];
    const BranchSample& prev = samples_[k - 1];
    if (cur.seg != prev.seg) {
      cur.W = prev.W;
      continue;
    }
    std::size_t seg = cur.seg;
    cplx inc = integrate(
        [&](double t) { return sqrt_at(seg, t) * path_.velocity(seg, t); }, prev.t, cur.t,
        1e30, 0);  // single panel: samples are already refinement-spaced
    cur.W = prev.W + inc;
  }
}

BranchedRoot continue_branch(const Characteristic& q, const OrientedPath& path, cplx initial) {
  return BranchedRoot(q, path, initial);
}

// ---------------------------------------------------------------------------

namespace {

struct Pos {
  std::size_t seg;
  double t;
  bool operator<(const Pos& o) const { return double(seg) + t < double(o.seg) + o.t; }
};

Pos locate(const BranchedRoot& b, cplx x) {
  const auto& S = b.samples();
  std::size_t best = 0;
  double bestd = std::numeric_limits<double>::max();
  for (std::size_t k = 0; k < S.size(); ++k) {
    double d = std::abs(S[k].x - x);
    if (d < bestd) {
      bestd = d;
      best = k;
    }
  }
  // refine within the neighboring gaps by golden-section-ish scan
  Pos p{S[best].seg, S[best].t};
  double lo = std::max(0.0, p.t - 0.1), hi = std::min(1.0, p.t + 0.1);
  for (int it = 0; it < 40; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (std::abs(b.path().point(p.seg, m1) - x) < std::abs(b.path().point(p.seg, m2) - x))
      hi = m2;
    else
      lo = m1;
  }
  p.t = 0.5 * (lo + hi);
  // Polish by projecting the residual on the local velocity; the scan above
  // only brackets t to ~1e-8, which is too coarse for tight quadratures.
  for (int it = 0; it < 4; ++it) {
    const cplx r = b.path().point(p.seg, p.t) - x;
    const cplx v = b.path().velocity(p.seg, p.t);
    const double v2 = std::norm(v);
    if (v2 == 0.0) break;
    p.t = std::clamp(p.t - std::real(r * std::conj(v)) / v2, 0.0, 1.0);
  }
  return p;
}

bool is_simple_tp(const Characteristic& q, cplx x) {
  double cs = coeff_scale(q);
  return std::abs(q.q(x)) < 1e-8 * cs && std::abs(q.qp(x)) > 1e-8 * cs;
}

// Integral over one segment's parameter range, with an optional t^2
// substitution at either end (for an integrable sqrt singularity there).
cplx segment_integral(const BranchedRoot& b, std::size_t seg, double ta, double tb, double tol,
                      bool sub_at_a, bool sub_at_b) {
  const OrientedPath& P = b.path();
  auto plain = [&](double t) { return b.sqrt_at(seg, t) * P.velocity(seg, t); };
  if (!sub_at_a && !sub_at_b) return integrate(plain, ta, tb, tol);
  if (sub_at_a && sub_at_b) {
    double tm = 0.5 * (ta + tb);
    return segment_integral(b, seg, ta, tm, tol / 2, true, false) +
           segment_integral(b, seg, tm, tb, tol / 2, false, true);
  }
  if (sub_at_a) {
    // t = ta + s^2 (tb - ta), dt = 2 s (tb - ta) ds
    return integrate(
        [&](double s) {
          double t = ta + s * s * (tb - ta);
          return plain(t) * (2.0 * s * (tb - ta));
        },
        0.0, 1.0, tol);
  }
  return integrate(
      [&](double s) {
        double t = tb + s * s * (ta - tb);
        return plain(t) * (2.0 * s * (ta - tb));
      },
      1.0, 0.0, tol);
}

cplx integrate_between(const BranchedRoot& b, Pos a, Pos c, double tol) {
  const Characteristic& q = b.characteristic();
  const OrientedPath& P = b.path();
  double per = tol;  // each piece gets the full budget; errors add but stay O(tol)
  cplx total{0.0};
  for (std::size_t seg = a.seg; seg <= c.seg; ++seg) {
    double ta = (seg == a.seg) ? a.t : 0.0;
    double tb = (seg == c.seg) ? c.t : 1.0;
    if (ta == tb) continue;
    bool sub_a = seg == a.seg && is_simple_tp(q, P.point(seg, ta));
    bool sub_b = seg == c.seg && is_simple_tp(q, P.point(seg, tb));
    total += segment_integral(b, seg, ta, tb, per / double(P.segments()), sub_a, sub_b);
  }
  return total;
}

}  // namespace

ActionValue action(const BranchedRoot& branched, double quad_tol) {
  Pos a{0, 0.0};
  Pos c{branched.path().segments() - 1, 1.0};
  cplx v = integrate_between(branched, a, c, quad_tol);
  return {v, branched.path().start(), branched.path().end()};
}

ActionValue action(const BranchedRoot& branched, cplx from, cplx to, double quad_tol) {
  Pos a = locate(branched, from);
  Pos c = locate(branched, to);
  if (c < a) {
    ActionValue r{-integrate_between(branched, c, a, quad_tol), from, to};
    return r;
  }
  return {integrate_between(branched, a, c, quad_tol), from, to};
}

CanonicalCheck is_canonical(const BranchedRoot& branched, int sigma, double arg_lambda,
                            double mono_tol) {
  cplx rot = std::exp(iu * arg_lambda);
  const auto& S = branched.samples();
  double prev = sigma * (rot * S.front().W).real();
  double high = prev;
  for (std::size_t k = 1; k < S.size(); ++k) {
    double cur = sigma * (rot * S[k].W).real();
    if (cur > high + mono_tol) return {false, S[k].arclen};
    high = std::max(high, cur);
  }
  return {true, -1.0};
}

}  // namespace wkb
