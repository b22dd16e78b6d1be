#pragma once

#include <string>
#include <vector>

#include "stackres/resolve.hpp"

namespace stackres {

// Newton polygon of the working polynomial in (x, z) exponents, with the intercepts
// (nu * delta, 0) and (0, nu) of the w-supporting line and, for a multi-weighted blow-up, the
// supporting line of the u-valuation.
std::string newton_polygon_svg(const CenterAnalysis& analysis, const Blowup* blowup = nullptr);

// The fan [e1, w, e2] beside its subdivision by the blow-up (a single panel when nothing is
// subdivided). Rays are in the blow-up's oriented coordinates.
std::string fan_svg(const Blowup& blowup);

// Writes node-<id>-newton.svg and node-<id>-fan.svg for every blown-up node into directory and
// returns the file names written, in node order. Output bytes depend only on the tree.
std::vector<std::string> emit_figures(const ResolutionTree& tree, const std::string& directory);

}  // namespace stackres
