#pragma once

// Deterministic SVG 1.1 renderings of the graph and of Borel-plane pole maps.
// Output depends only on the input objects (fixed-precision formatting, no
// timestamps), so identical inputs give byte-identical files.

#include <string>

#include "wkb/borel.hpp"
#include "wkb/stokes.hpp"

namespace wkb {

std::string stokes_svg(const StokesGraph& g);

/// Borel s-plane: Pade poles (crosses; hollow when flagged spurious),
/// forecast branch points (circles) and the series' estimated radius.
std::string pole_map_svg(const PadeApproximant& p, const SingularityForecast& f,
                         double radius_estimate);

}  // namespace wkb
