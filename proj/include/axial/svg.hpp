#pragma once

#include <string>
#include <vector>

#include "axial/geometry.hpp"
#include "axial/openspace.hpp"

namespace axial {

// Scene outline with the lines drawn over it; values, when given (one per
// line), colour the lines from blue (lowest) to red (highest).
std::string svg_document(const OpenSpace& s, const std::vector<Chord>& lines,
                         const std::vector<double>* values = nullptr);

}  // namespace axial
