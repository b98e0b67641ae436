#pragma once

#include <string>

#include "stratakit/modulus.hpp"

namespace stratakit {

inline constexpr const char* version_string = "0.1.0";

struct PortraitSpec {
    RealPolyField poly;
    double x_min = -2.0, x_max = 2.0, y_min = -2.0, y_max = 2.0;
    int density = 7;      ///< orbit seeds per axis
    int size_px = 720;
    bool tree_overlay = false;
};

/// Deterministic SVG phase portrait: sampled orbits, separatrix polylines,
/// singular points colored by kind, optional tree-graph overlay.  Non-generic
/// inputs degrade to an orbits-only picture with a warning element.
std::string render_portrait(const PortraitSpec& spec, const Tolerances& tol = {});

} // namespace stratakit
