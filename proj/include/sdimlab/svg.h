#pragma once

#include "sdimlab/geom.h"
#include "sdimlab/ifs.h"

#include <string>
#include <vector>

namespace sdimlab {

/// SVG 1.1 with one <line> per edge. The picture window is [0,1] x [0,0.55],
/// mapped to 1000 x 550 user units with y pointing up. Byte-identical output
/// for identical input.
std::string render_graph_svg(const PLGraph& g);

/// SVG 1.1 with one <circle> per point, fitted to a square canvas.
std::string render_cloud_svg(const std::vector<Vec2>& cloud);

}  // namespace sdimlab
