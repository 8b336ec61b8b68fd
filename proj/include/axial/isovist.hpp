#pragma once

#include <vector>

#include "axial/geometry.hpp"
#include "axial/grids.hpp"
#include "axial/medial.hpp"
#include "axial/openspace.hpp"

namespace axial {

struct Ray {
  Chord chord;
  Point2 origin;
  double length;
  int id;
};

struct RaySet {
  std::vector<Ray> rays;
};

// Maximal chords through p at directions k*angular_step (degrees) for
// k = 0 .. 180/angular_step - 1. The step must divide 180.
std::vector<Chord> ray_fan(const Point2& p, const OpenSpace& s,
                           const SpatialIndex& idx, double angular_step = 1.0);

// Index of the fan chord to keep: among chords within eps_len of the longest,
// the one crossing the most context chords (collinear overlap counts);
// ties pick the smallest direction. grid, when given, indexes the context.
int isovist_ridge(const std::vector<Chord>& fan,
                  const std::vector<Chord>& context, double eps_len,
                  double eps, const ChordGrid* grid = nullptr);

// One ridge per skeleton vertex, in vertex order, deduplicated; each ridge
// is selected against the rays accepted before it.
RaySet build_ray_set(const MedialGraph& g, const OpenSpace& s,
                     const SpatialIndex& idx, double angular_step = 1.0,
                     double eps_len = 0.02, int threads = 1);

}  // namespace axial
