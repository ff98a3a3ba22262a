#pragma once

#include <optional>
#include <vector>

#include "wkb/path.hpp"
#include "wkb/potential.hpp"
#include "wkb/types.hpp"

namespace wkb {

struct StokesSample {
  cplx x;
  cplx sqrt_q;  // branch tracked along the line
  cplx W;       // action from the origin turning point along the line
};

struct StokesLine {
  int origin = -1;  // turning-point index in the graph's TurningPointSet
  std::vector<StokesSample> samples;
  bool finite = false;
  int terminus_tp = -1;          // finite lines: turning point reached
  int terminus_sector = 0;       // infinite lines: sector index anticlockwise of the line
  double asymptotic_angle = 0;   // infinite lines: direction at infinity
};

struct Sector {
  int index = 0;  // 1-based, increasing anticlockwise; sector 1 contains direction 0
  double theta_lo = 0, theta_hi = 0;  // direction interval at infinity
  int signature = 0;                  // sigma_k: Re(sigma_k W_k) < 0 inside
  int attached_tp = 0;                // turning point the sector's action is measured from
  cplx anchor;                        // point at R_infinity on the wedge bisector
  cplx anchor_sqrt;                   // tracked branch of sqrt(q) at the anchor
  std::vector<int> bounding_lines;    // indices into StokesGraph::lines
};

struct StokesGraph {
  Characteristic q;
  TurningPointSet tps;
  std::vector<StokesLine> lines;
  std::vector<Sector> sectors;
  double phase = 0;  // arg lambda the graph was built at
  double R_infinity = 0;
  double scale = 0;            // 1 + max |turning point|
  double capture_radius = 0;   // line termination radius at a turning point
  double exclusion_radius = 0; // default clearance for paths

  const Sector& sector(int index) const;  // 1-based cyclic lookup
  int n_sectors() const { return int(sectors.size()); }
};

/// Traces the Stokes graph of q at the given arg(lambda). All turning points
/// must be simple.
StokesGraph build_graph(const Characteristic& q, double arg_lambda = 0.0);

enum class PointClass { sector_interior, inner_strip, on_finite_line, on_infinite_line };

struct Classification {
  PointClass kind;
  int sector_index = 0;  // for sector_interior
  int line_index = -1;   // for on-*-line
  double line_distance = 0;
};

Classification classify_point(const StokesGraph& g, cplx x);

/// Action W_k(x) measured from the sector's attached turning point along a
/// route through the sector's anchor, on the sector's tracked branch.
cplx sector_action(const StokesGraph& g, int sector_index, cplx x);

/// The branch of sqrt(q) at x continued from the sector's anchor.
cplx sector_branch_at(const StokesGraph& g, int sector_index, cplx x);

/// xi(x) = -sigma_1 W_1(x) along the supplied path from the turning point
/// attached to sector 1, with the branch continued from sector 1's anchor.
cplx xi_of(const StokesGraph& g, cplx x, const OrientedPath& path);

/// A path from an anchor of sector k at R_infinity to x along which
/// sigma_k Re(e^{i phase} W) is monotone (non-increasing when traversed from
/// x out to the anchor). Returns nothing when x is outside the sector's
/// domain of canonical reachability.
std::optional<OrientedPath> canonical_path(const StokesGraph& g, int sector_index, cplx x);

struct SummableMember {
  int sector_index;
  int signature;
};

/// Sector indices whose fundamental solutions are Borel summable at x0
/// (constructively: a canonical path exists and persists under small
/// rotations of arg lambda). Guaranteed non-empty with both signatures.
std::vector<SummableMember> summable_set(const StokesGraph& g, cplx x0);

/// Rebuilds the graph at phase + delta_phi.
StokesGraph rotate(const StokesGraph& g, double delta_phi);

/// A polyline route from a to b detouring around turning points.
OrientedPath route_avoiding(const TurningPointSet& tps, cplx a, cplx b, double clearance);

}  // namespace wkb
