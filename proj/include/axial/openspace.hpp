#pragma once

#include <string>
#include <vector>

#include "axial/geometry.hpp"

namespace axial {

// A polygon with holes: the walkable region between obstacles.
// Construct through make_open_space so the derived fields and the
// validation guarantees hold.
struct OpenSpace {
  std::vector<Point2> outer;               // counterclockwise
  std::vector<std::vector<Point2>> holes;  // each clockwise
  std::string name;

  int feature_count() const { return 1 + int(holes.size()); }
  const std::vector<Point2>& ring(int feature) const {
    return feature == 0 ? outer : holes[std::size_t(feature) - 1];
  }

  const std::vector<BoundaryEdge>& boundary() const { return boundary_; }
  double minx() const { return minx_; }
  double miny() const { return miny_; }
  double maxx() const { return maxx_; }
  double maxy() const { return maxy_; }
  double diameter() const { return diameter_; }
  // Point-coincidence tolerance: 1e-9 of the scene diameter.
  double eps() const { return eps_; }

  // Filled by make_open_space.
  std::vector<BoundaryEdge> boundary_;
  double minx_ = 0, miny_ = 0, maxx_ = 0, maxy_ = 0;
  double diameter_ = 0, eps_ = 0;
};

// Validates rings (simplicity, hole placement, disjointness), normalizes
// orientation, and fills the derived fields. Throws ValidationError.
OpenSpace make_open_space(std::vector<Point2> outer,
                          std::vector<std::vector<Point2>> holes,
                          std::string name);

// Rasterized flood fill at resolution min_clearance/3 (coarsened to stay
// under max_cells); true iff at least 99.9% of open cells are reachable
// from one open cell.
bool connectivity_check(const OpenSpace& s, std::size_t max_cells = 4000000);

}  // namespace axial
