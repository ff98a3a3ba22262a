#pragma once

#include <cstddef>
#include <vector>

#include "wkb/potential.hpp"
#include "wkb/types.hpp"

namespace wkb {

/// Piecewise contour in the x-plane. Each segment between consecutive nodes
/// is either a straight line or a circular-ish arc about arc_center (radius
/// and angle interpolated between the endpoints, sweeping the short way).
struct OrientedPath {
  enum class Kind { line, arc };

  std::vector<cplx> nodes;
  std::vector<Kind> kinds;  // one per segment; empty means all lines
  cplx arc_center{0.0};
  double exclusion_radius = 0.0;

  static OrientedPath line(cplx a, cplx b);
  static OrientedPath through(std::vector<cplx> pts);
  /// Closed anticlockwise circle as `pieces` arc segments; `circuits` > 1
  /// winds multiple times (useful for odd-degree closed contours).
  static OrientedPath circle(cplx center, double radius, int pieces = 8, int circuits = 1,
                             cplx start_dir = cplx{1.0});

  std::size_t segments() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  Kind kind(std::size_t j) const { return kinds.empty() ? Kind::line : kinds.at(j); }
  cplx start() const { return nodes.front(); }
  cplx end() const { return nodes.back(); }

  /// Position / dx/dt on segment j at parameter t in [0, 1].
  cplx point(std::size_t j, double t) const;
  cplx velocity(std::size_t j, double t) const;

  OrientedPath reversed() const;
  double length() const;
  void validate() const;  // throws invalid_argument on degenerate segments
};

struct BranchSample {
  std::size_t seg;
  double t;
  cplx x;
  cplx sqrt_q;
  double arclen;  // cumulative arc length up to this sample
  cplx W;         // cumulative integral of sqrt_q from path start
};

/// A path together with a continuously tracked branch of sqrt(q) along it.
class BranchedRoot {
 public:
  BranchedRoot(const Characteristic& q, OrientedPath path, cplx initial);

  const OrientedPath& path() const { return path_; }
  const Characteristic& characteristic() const { return *q_; }
  const std::vector<BranchSample>& samples() const { return samples_; }
  cplx initial_value() const { return samples_.front().sqrt_q; }
  cplx final_value() const { return samples_.back().sqrt_q; }

  /// Branch value anywhere on the path, continued from the nearest sample.
  cplx sqrt_at(std::size_t seg, double t) const;
  /// Branch value at the path point nearest to x (x must lie on the path).
  cplx sqrt_near(cplx x) const;

 private:
  const Characteristic* q_;
  OrientedPath path_;
  std::vector<BranchSample> samples_;
  void march(cplx initial);
  void accumulate();
};

/// Tracks sqrt(q) from `initial` (with initial^2 = q(start) to 1e-10 relative)
/// along the path by nearest-value continuation with adaptive refinement.
BranchedRoot continue_branch(const Characteristic& q, const OrientedPath& path, cplx initial);

struct ActionValue {
  cplx value;
  cplx start, end;
};

/// Integral of the tracked sqrt_q over the whole path. Simple turning points
/// at an endpoint are handled by the substitution x = x_tp + t^2.
ActionValue action(const BranchedRoot& branched, double quad_tol = 1e-12);

/// Same between two points lying on the path (located by nearest sample).
ActionValue action(const BranchedRoot& branched, cplx from, cplx to, double quad_tol = 1e-12);

struct CanonicalCheck {
  bool ok = true;
  double violation_arclen = -1.0;  // arc length of the first violation
};

/// True iff sigma * Re(e^{i arg_lambda} W) is non-increasing along the path.
CanonicalCheck is_canonical(const BranchedRoot& branched, int sigma, double arg_lambda,
                            double mono_tol = 1e-9);

}  // namespace wkb
