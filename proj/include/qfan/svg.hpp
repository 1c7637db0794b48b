#pragma once

#include <string>

#include "qfan/cobordism.hpp"
#include "qfan/polytope.hpp"

namespace qfan {

/**
 * Deterministic SVG of a 2-dimensional fan (rays clipped to the unit
 * disk, dashed strokes for virtual columns, labels = 1-based generator
 * indices) or a wireframe of a 3-dimensional fan's rays. Throws
 * UnrenderableDimension.
 */
std::string render_fan_svg(const QuantumFan& fan);

/// Wireframe of a polytope of ambient dimension <= 3.
std::string render_polytope_svg(const Polytope& p);

}  // namespace qfan
