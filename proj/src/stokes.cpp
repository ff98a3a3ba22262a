#include "wkb/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wkb/quadrature.hpp"

namespace wkb {

namespace {

cplx nearest_sqrt(cplx qv, cplx ref) {
  cplx sp = std::sqrt(qv);
  return (std::abs(sp - ref) <= std::abs(-sp - ref)) ? sp : -sp;
}

double dist_point_segment(cplx p, cplx a, cplx b) {
  cplx ab = b - a;
  double L2 = std::norm(ab);
  if (L2 == 0) return std::abs(p - a);
  double t = std::clamp(((p - a) * std::conj(ab)).real() / L2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
  auto side = [](cplx p, cplx q, cplx r) {
    return ((q - p) * std::conj(r - p)).imag();
  };
  double s1 = side(a, b, c), s2 = side(a, b, d), s3 = side(c, d, a), s4 = side(c, d, b);
  return ((s1 > 0) != (s2 > 0)) && ((s3 > 0) != (s4 > 0));
}

bool angle_in(double a, double lo, double hi) {
  return wrap_positive(a - lo) < hi - lo;
}

}  // namespace

const Sector& StokesGraph::sector(int index) const {
  int N = n_sectors();
  int j = ((index - 1) % N + N) % N;
  return sectors[j];
}

// ---------------------------------------------------------------------------
// routing around turning points
// ---------------------------------------------------------------------------

namespace {

void route_rec(const TurningPointSet& tps, cplx a, cplx b, double clearance, int depth,
               std::vector<cplx>& out) {
  const TurningPoint* worst = nullptr;
  double worst_d = clearance;
  for (const auto& t : tps.points) {
    if (std::abs(t.location - a) < 2 * clearance || std::abs(t.location - b) < 2 * clearance)
      continue;  // endpoints deliberately at/near a turning point are exempt
    double d = dist_point_segment(t.location, a, b);
    if (d < worst_d) {
      worst_d = d;
      worst = &t;
    }
  }
  if (!worst || depth <= 0) {
    out.push_back(b);
    return;
  }
  cplx ab = b - a;
  cplx foot = a + std::clamp((((worst->location - a) * std::conj(ab)).real() / std::norm(ab)),
                             0.0, 1.0) * ab;
  cplx away = foot - worst->location;
  if (std::abs(away) < 1e-14) away = iu * ab / std::abs(ab);
  cplx via = worst->location + away / std::abs(away) * (3 * clearance);
  route_rec(tps, a, via, clearance, depth - 1, out);
  route_rec(tps, via, b, clearance, depth - 1, out);
}

}  // namespace

OrientedPath route_avoiding(const TurningPointSet& tps, cplx a, cplx b, double clearance) {
  std::vector<cplx> nodes{a};
  route_rec(tps, a, b, clearance, 6, nodes);
  OrientedPath p = OrientedPath::through(std::move(nodes));
  p.exclusion_radius = clearance;
  return p;
}

// ---------------------------------------------------------------------------
// line tracing
// ---------------------------------------------------------------------------

namespace {

StokesLine trace_line(const Characteristic& q, const TurningPointSet& tps, int k, double theta,
                      double phase, double scale, double R_far, double capture) {
  StokesLine line;
  line.origin = k;
  cplx tp = tps.points[k].location;
  cplx rot = std::exp(iu * phase);

  double r0 = 1e-4 * scale;
  cplx x = tp + r0 * std::exp(iu * theta);
  auto bridge = continue_branch(q, OrientedPath::line(tp, x), cplx{0.0});
  cplx W = action(bridge, 1e-13).value;
  cplx s = bridge.final_value();

  // put the start exactly on the line
  cplx delta = -(rot * W).real() * std::conj(rot * s) / std::norm(s);
  x += delta;
  W += s * delta;
  s = nearest_sqrt(q.q(x), s);

  double sign = 1.0;
  {
    cplx v = iu * std::conj(rot * s) / std::abs(s);
    if ((v * std::exp(-iu * theta)).real() < 0) sign = -1.0;
  }

  line.samples.push_back({tp, cplx{0.0}, cplx{0.0}});
  line.samples.push_back({x, s, W});

  double arclen = r0;
  for (int step = 0; step < 40000; ++step) {
    double dmin = std::numeric_limits<double>::max();
    int jmin = -1;
    for (std::size_t j = 0; j < tps.points.size(); ++j) {
      if (int(j) == k && arclen < 10 * r0) continue;
      double d = std::abs(x - tps.points[j].location);
      if (d < dmin) {
        dmin = d;
        jmin = int(j);
      }
    }
    if (dmin < capture) {
      line.finite = true;
      line.terminus_tp = jmin;
      cplx tpe = tps.points[jmin].location;
      line.samples.push_back({tpe, s, W + s * (tpe - x)});
      return line;
    }
    if (std::abs(x) > R_far) {
      line.finite = false;
      line.asymptotic_angle = wrap_positive(std::arg(x));
      return line;
    }

    double h = std::min(0.02 * scale, 0.3 * dmin);
    auto dir = [&](cplx y, cplx sref) {
      cplx sy = nearest_sqrt(q.q(y), sref);
      return sign * iu * std::conj(rot * sy) / std::abs(sy);
    };
    // RK4 on position, branch carried through the stages
    cplx k1 = dir(x, s);
    cplx k2 = dir(x + 0.5 * h * k1, s);
    cplx k3 = dir(x + 0.5 * h * k2, s);
    cplx k4 = dir(x + h * k3, s);
    cplx xn = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    cplx sn = nearest_sqrt(q.q(xn), s);

    // action increment along the chord, then project back onto the line
    cplx chord = xn - x;
    cplx sc = s;
    cplx dW = integrate(
        [&](double t) {
          sc = nearest_sqrt(q.q(x + t * chord), sc);
          return sc * chord;
        },
        0.0, 1.0, 1e30, 0);
    W += dW;
    cplx err_corr = -(rot * W).real() * std::conj(rot * sn) / std::norm(sn);
    xn += err_corr;
    W += sn * err_corr;
    sn = nearest_sqrt(q.q(xn), sn);

    arclen += std::abs(xn - x);
    x = xn;
    s = sn;
    line.samples.push_back({x, s, W});
  }
  throw numeric_error("stokes line tracer stalled");
}

}  // namespace

// ---------------------------------------------------------------------------
// graph construction
// ---------------------------------------------------------------------------

StokesGraph build_graph(const Characteristic& q, double arg_lambda) {
  StokesGraph g;
  g.q = q;
  g.phase = arg_lambda;
  g.tps = turning_points(q);
  if (!g.tps.all_simple())
    throw invalid_argument("graph construction requires simple turning points");

  g.scale = 1.0;
  for (const auto& t : g.tps.points) g.scale = std::max(g.scale, 1.0 + std::abs(t.location));
  g.R_infinity = 10.0 * g.scale;
  g.capture_radius = 1e-6 * g.scale;
  g.exclusion_radius = 1e-3 * (g.tps.diameter() + 1.0);
  double R_far = 1.5 * g.R_infinity;

  // three lines per simple turning point
  for (std::size_t k = 0; k < g.tps.points.size(); ++k) {
    cplx qp = q.qp(g.tps.points[k].location);
    double base = std::arg(qp);
    for (int m = 0; m < 3; ++m) {
      double theta = (pi / 2 + m * pi - arg_lambda - base / 2) * (2.0 / 3.0);
      g.lines.push_back(
          trace_line(q, g.tps, int(k), theta, arg_lambda, g.scale, R_far, g.capture_radius));
    }
  }

  // drop the duplicate tracing of each finite line (kept once, lower origin)
  std::vector<StokesLine> kept;
  for (auto& l : g.lines) {
    if (l.finite) {
      bool dup = false;
      for (const auto& m : kept)
        if (m.finite && m.origin == l.terminus_tp && m.terminus_tp == l.origin) dup = true;
      if (dup) continue;
    }
    kept.push_back(std::move(l));
  }
  g.lines = std::move(kept);

  // sectors from the asymptotic stokes directions
  int n = q.degree();
  int N = n + 2;
  double lead = std::arg(q.base.leading());
  std::vector<double> dirs(N);
  for (int m = 0; m < N; ++m)
    dirs[m] = wrap_positive((pi + 2 * pi * m - 2 * arg_lambda - lead) / (n + 2));
  std::sort(dirs.begin(), dirs.end());

  // snap measured escape angles to the theoretical asymptotic directions
  for (auto& l : g.lines) {
    if (l.finite) continue;
    double best = std::numeric_limits<double>::max();
    double snap = l.asymptotic_angle;
    for (double d : dirs) {
      double dev = std::abs(wrap_angle(l.asymptotic_angle - d));
      if (dev < best) {
        best = dev;
        snap = d;
      }
    }
    if (best > pi / (n + 2))
      throw numeric_error("traced stokes line does not approach an asymptotic direction");
    l.asymptotic_angle = snap;
  }

  int start = 0;
  for (int j = 0; j < N; ++j) {
    double lo = dirs[j];
    double hi = (j + 1 < N) ? dirs[j + 1] : dirs[0] + 2 * pi;
    if (angle_in(0.0, lo, hi)) start = j;
  }

  for (int j = 0; j < N; ++j) {
    int w = (start + j) % N;
    Sector s;
    s.index = j + 1;
    s.theta_lo = dirs[w];
    s.theta_hi = (w + 1 < N) ? dirs[w + 1] : dirs[0] + 2 * pi;
    double bis = 0.5 * (s.theta_lo + s.theta_hi);
    s.anchor = g.R_infinity * std::exp(iu * bis);
    s.anchor_sqrt = std::sqrt(q.q(s.anchor));
    g.sectors.push_back(s);
  }

  // bounding lines, attached turning points, terminus sectors
  for (auto& s : g.sectors) {
    for (std::size_t li = 0; li < g.lines.size(); ++li) {
      if (g.lines[li].finite) continue;
      double a = g.lines[li].asymptotic_angle;
      double w = s.theta_hi - s.theta_lo;
      if (std::abs(wrap_angle(a - s.theta_lo)) < 0.25 * w ||
          std::abs(wrap_angle(a - s.theta_hi)) < 0.25 * w)
        s.bounding_lines.push_back(int(li));
    }
    s.attached_tp = 0;
    double best = std::numeric_limits<double>::max();
    for (int li : s.bounding_lines) {
      if (std::abs(wrap_angle(g.lines[li].asymptotic_angle - s.theta_hi)) < best) {
        best = std::abs(wrap_angle(g.lines[li].asymptotic_angle - s.theta_hi));
        s.attached_tp = g.lines[li].origin;
      }
    }
    if (s.bounding_lines.empty()) {
      best = std::numeric_limits<double>::max();
      for (std::size_t k = 0; k < g.tps.points.size(); ++k) {
        double d = std::abs(g.tps.points[k].location - s.anchor);
        if (d < best) {
          best = d;
          s.attached_tp = int(k);
        }
      }
    }
  }
  for (auto& l : g.lines) {
    if (l.finite) continue;
    for (const auto& s : g.sectors)
      if (std::abs(wrap_angle(l.asymptotic_angle - s.theta_lo)) < 1e-6) l.terminus_sector = s.index;
  }

  // signatures: sigma_k = -sign(Re(e^{i phase} W_k)) at the anchor
  for (auto& s : g.sectors) {
    cplx tp = g.tps.points[s.attached_tp].location;
    auto leg = route_avoiding(g.tps, tp, s.anchor, g.exclusion_radius);
    auto b = continue_branch(q, leg, cplx{0.0});
    cplx W = action(b, 1e-11).value;
    if (std::abs(b.final_value() + s.anchor_sqrt) < std::abs(b.final_value() - s.anchor_sqrt))
      W = -W;  // align the traced branch with the stored anchor branch
    double h = (std::exp(iu * arg_lambda) * W).real();
    s.signature = (h > 0) ? -1 : 1;
  }
  return g;
}

StokesGraph rotate(const StokesGraph& g, double delta_phi) {
  return build_graph(g.q, g.phase + delta_phi);
}

// ---------------------------------------------------------------------------
// branch / action queries
// ---------------------------------------------------------------------------

cplx sector_branch_at(const StokesGraph& g, int sector_index, cplx x) {
  const Sector& s = g.sector(sector_index);
  if (std::abs(x - s.anchor) < 1e-14 * (1.0 + std::abs(s.anchor))) return s.anchor_sqrt;
  auto leg = route_avoiding(g.tps, s.anchor, x, g.exclusion_radius);
  return continue_branch(g.q, leg, s.anchor_sqrt).final_value();
}

cplx sector_action(const StokesGraph& g, int sector_index, cplx x) {
  const Sector& s = g.sector(sector_index);
  cplx tp = g.tps.points[s.attached_tp].location;
  auto leg1 = route_avoiding(g.tps, tp, s.anchor, g.exclusion_radius);
  auto b1 = continue_branch(g.q, leg1, cplx{0.0});
  cplx W1 = action(b1, 1e-11).value;
  if (std::abs(b1.final_value() + s.anchor_sqrt) < std::abs(b1.final_value() - s.anchor_sqrt))
    W1 = -W1;
  auto leg2 = route_avoiding(g.tps, s.anchor, x, g.exclusion_radius);
  auto b2 = continue_branch(g.q, leg2, s.anchor_sqrt);
  return W1 + action(b2, 1e-11).value;
}

cplx xi_of(const StokesGraph& g, cplx x, const OrientedPath& path) {
  const Sector& s1 = g.sector(1);
  cplx sx = sector_branch_at(g, 1, x);
  auto b = continue_branch(g.q, path.reversed(), sx);
  cplx W1 = -action(b, 1e-12).value;
  return -double(s1.signature) * W1;
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

Classification classify_point(const StokesGraph& g, cplx x) {
  for (const auto& t : g.tps.points)
    if (std::abs(x - t.location) < g.capture_radius)
      throw numeric_error("point is too close to a turning point to classify");

  // nearest line sample
  int best_line = -1;
  std::size_t best_k = 0;
  double best_d = std::numeric_limits<double>::max();
  for (std::size_t li = 0; li < g.lines.size(); ++li) {
    const auto& S = g.lines[li].samples;
    for (std::size_t k = 1; k < S.size(); ++k) {
      double d = std::abs(S[k].x - x);
      if (d < best_d) {
        best_d = d;
        best_line = int(li);
        best_k = k;
      }
    }
  }

  if (best_line >= 0 && best_d < 0.1 * g.scale) {
    const auto& smp = g.lines[best_line].samples[best_k];
    // W at x continued from the nearest sample; exact on the line
    auto bridge = continue_branch(g.q, OrientedPath::line(smp.x, x), smp.sqrt_q);
    cplx W = smp.W + action(bridge, 1e-13).value;
    double err = std::abs((std::exp(iu * g.phase) * W).real());
    double Wmag = 1.0 + std::abs(W);
    if (err < 1e-9 * Wmag) {
      return {g.lines[best_line].finite ? PointClass::on_finite_line
                                        : PointClass::on_infinite_line,
              0, best_line, best_d};
    }
  }

  // sector membership by an unobstructed route to the wedge at infinity
  double Rr = 1.2 * g.R_infinity;
  auto crosses_any = [&](cplx a, cplx b) {
    for (const auto& l : g.lines)
      for (std::size_t k = 1; k < l.samples.size(); ++k)
        if (segments_cross(a, b, l.samples[k - 1].x, l.samples[k].x)) return true;
    return false;
  };

  int N = g.n_sectors();
  // try the wedge containing arg(x) first, then the rest
  std::vector<int> order;
  for (const auto& s : g.sectors)
    if (angle_in(std::arg(x), s.theta_lo, s.theta_hi)) order.push_back(s.index);
  for (int j = 1; j <= N; ++j)
    if (std::find(order.begin(), order.end(), j) == order.end()) order.push_back(j);

  for (int idx : order) {
    const Sector& s = g.sector(idx);
    cplx out = Rr * std::exp(iu * std::arg(x));
    if (crosses_any(x, out)) continue;
    double from = std::arg(x);
    double bis = 0.5 * (s.theta_lo + s.theta_hi);
    double sweep = wrap_angle(bis - from);
    int pieces = std::max(1, int(std::ceil(std::abs(sweep) / 0.05)));
    bool blocked = false;
    cplx prev = out;
    for (int p = 1; p <= pieces && !blocked; ++p) {
      cplx cur = Rr * std::exp(iu * (from + sweep * p / pieces));
      if (crosses_any(prev, cur)) blocked = true;
      prev = cur;
    }
    if (!blocked) return {PointClass::sector_interior, s.index, best_line, best_d};
  }
  return {PointClass::inner_strip, 0, best_line, best_d};
}

// ---------------------------------------------------------------------------
// canonical paths
// ---------------------------------------------------------------------------

namespace {

struct FlowOutcome {
  bool escaped = false;
  double angle = 0;
  std::vector<cplx> pts;
};

FlowOutcome descend(const StokesGraph& g, int sigma, cplx x0, cplx seed, double beta,
                    double phase) {
  FlowOutcome out;
  cplx rot = double(sigma) * std::exp(iu * phase);
  cplx tilt = std::exp(iu * beta);
  cplx x = x0, s = seed;
  out.pts.push_back(x);
  double arclen = 0;
  for (int step = 0; step < 60000; ++step) {
    double dmin = std::numeric_limits<double>::max();
    for (const auto& t : g.tps.points) dmin = std::min(dmin, std::abs(x - t.location));
    if (dmin < 0.5 * g.exclusion_radius) return out;  // grazing a saddle: give up
    double h = std::min(0.05 * g.scale, 0.5 * dmin);
    auto dir = [&](cplx y, cplx sref) {
      cplx sy = nearest_sqrt(g.q.q(y), sref);
      return -tilt * std::conj(rot * sy) / std::abs(sy);
    };
    cplx k1 = dir(x, s);
    cplx k2 = dir(x + 0.5 * h * k1, s);
    cplx xn = x + h * k2;  // midpoint rule is plenty for a search skeleton
    s = nearest_sqrt(g.q.q(xn), s);
    arclen += std::abs(xn - x);
    x = xn;
    if (std::abs(x - out.pts.back()) > 0.08 * g.scale) out.pts.push_back(x);
    if (std::abs(x) > 1.02 * g.R_infinity) {
      if (std::abs(x - out.pts.back()) > 1e-9 * g.scale)
        out.pts.push_back(x);
      out.escaped = true;
      out.angle = wrap_positive(std::arg(x));
      return out;
    }
    if (arclen > 80 * g.scale) return out;
  }
  return out;
}

std::optional<OrientedPath> canonical_path_at(const StokesGraph& g, int sector_index, cplx x,
                                              double phase) {
  const Sector& sec = g.sector(sector_index);
  int sigma = sec.signature;
  double width = sec.theta_hi - sec.theta_lo;
  cplx sp = std::sqrt(g.q.q(x));
  const double betas[] = {0.0, 0.35, -0.35, 0.7, -0.7, 1.05, -1.05, 1.3, -1.3};
  for (cplx seed : {sp, -sp}) {
    for (double beta : betas) {
      FlowOutcome f = descend(g, sigma, x, seed, beta, phase);
      if (!f.escaped) continue;
      if (!angle_in(f.angle, sec.theta_lo + 0.02 * width, sec.theta_hi - 0.02 * width)) continue;
      // verify monotonicity on the polygonal path (x -> anchor direction)
      OrientedPath fwd = OrientedPath::through(f.pts);
      fwd.exclusion_radius = g.exclusion_radius;
      try {
        auto b = continue_branch(g.q, fwd, seed);
        double Wmax = 0;
        for (const auto& smp : b.samples()) Wmax = std::max(Wmax, std::abs(smp.W));
        auto chk = is_canonical(b, sigma, phase, 1e-7 * (1.0 + Wmax));
        if (!chk.ok) continue;
      } catch (const numeric_error&) {
        continue;
      }
      std::vector<cplx> rev(f.pts.rbegin(), f.pts.rend());
      OrientedPath p = OrientedPath::through(std::move(rev));
      p.exclusion_radius = g.exclusion_radius;
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<OrientedPath> canonical_path(const StokesGraph& g, int sector_index, cplx x) {
  return canonical_path_at(g, sector_index, x, g.phase);
}

std::vector<SummableMember> summable_set(const StokesGraph& g, cplx x0) {
  const double delta = 0.02;
  std::vector<SummableMember> out;
  for (const auto& s : g.sectors) {
    bool ok = true;
    for (double ph : {g.phase, g.phase - delta, g.phase + delta}) {
      if (!canonical_path_at(g, s.index, x0, ph)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back({s.index, s.signature});
  }
  bool plus = false, minus = false;
  for (const auto& m : out) (m.signature > 0 ? plus : minus) = true;
  if (out.empty() || !plus || !minus)
    throw numeric_error("summable-set search failed to produce both signatures");
  return out;
}

}  // namespace wkb
