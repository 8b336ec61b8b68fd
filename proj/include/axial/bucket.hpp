#pragma once

#include <vector>

#include "axial/geometry.hpp"
#include "axial/isovist.hpp"
#include "axial/medial.hpp"
#include "axial/openspace.hpp"

namespace axial {

// Simple polygon approximating the sliver of open space a ray stands for.
struct Bucket {
  std::vector<Point2> ring;  // closed, last vertex implicitly joins the first
  Chord chain;               // the two chain anchor points
  int ray_id = -1;
  bool hull_fallback = false;
  double minx = 0, miny = 0, maxx = 0, maxy = 0;
};

// Chain the boundary generators associated with the ray's skeleton crossings
// into the ray's bucket polygon. Falls back to the convex hull of the
// contributors when the chained ring self-intersects.
Bucket form_bucket(const Ray& ray, const OpenSpace& s, const MedialGraph& g);

// Fraction of the chord's length inside the ring (even-odd rule).
double chord_fraction_in_ring(const Chord& c, const std::vector<Point2>& ring,
                              double eps);

// The sub-intervals of the chord (as [t0,t1] fractions of its length) lying
// inside the ring; disjoint and sorted.
void chord_ring_intervals(const Chord& c, const std::vector<Point2>& ring,
                          double eps,
                          std::vector<std::pair<double, double>>& out);

// Fraction of the chord inside the union of the buckets' rings.
double chord_fraction_in_buckets(const Chord& c,
                                 const std::vector<Bucket>& buckets,
                                 double eps);

bool ray_in_bucket(const Chord& candidate, const Bucket& b, double theta,
                   double eps);

}  // namespace axial
