#pragma once

#include <cstdint>
#include <string>

#include "axial/openspace.hpp"

namespace axial {

OpenSpace rectangle_scene(double w, double h);

// T-shaped hall: horizontal bar of length 2*arm + width, stem of depth arm.
OpenSpace t_scene(double arm, double width);

// rows x cols square blocks of the given side, separated by streets and
// surrounded by half-street margins.
OpenSpace grid_scene(int rows, int cols, double block = 8.0,
                     double street = 4.0);

// Jittered block city: random cell sizes and street widths, some blocks
// merged across a street (interrupting it), some cells left as plazas,
// one uninterrupted avenue each way. Deterministic per seed.
OpenSpace city_scene(int blocks, std::uint64_t seed);

// A single large hole carved with a bent (L-shaped) cavity, sized so the
// cavity is far below the scene's sampling resolution: the space behind
// the bend gets no line and stays invisible from every line.
OpenSpace pocket_scene();

// Parse "rect:10x4", "t:10x2", "grid:2x2[:8,4]", "city:40[:7]", "pocket".
OpenSpace scene_from_spec(const std::string& spec);

}  // namespace axial
