#pragma once

#include <cstddef>
#include <vector>

#include "axial/geometry.hpp"

namespace axial {

// Nearest-neighbour lookup over a fixed point set.
class PointGrid {
 public:
  PointGrid() = default;
  explicit PointGrid(const std::vector<Point2>& pts);

  // Index of the nearest point; ties broken by lowest index. -1 if empty.
  int nearest(const Point2& p) const;

 private:
  std::vector<Point2> pts_;
  double minx_ = 0, miny_ = 0, cell_ = 1;
  int nx_ = 0, ny_ = 0;
  std::vector<std::vector<int>> cells_;

  int cell_of(double x, double y) const;
};

// Uniform grid over segments; query returns a superset of the ids whose
// segment could intersect the probe segment.
class ChordGrid {
 public:
  ChordGrid() = default;
  ChordGrid(double minx, double miny, double maxx, double maxy,
            std::size_t expected);

  void insert(int id, const Chord& c);
  void segment_candidates(const Chord& c, std::vector<int>& out) const;
  bool empty() const { return nx_ == 0; }

 private:
  double minx_ = 0, miny_ = 0, cell_ = 1;
  int nx_ = 0, ny_ = 0;
  std::vector<std::vector<int>> cells_;

  template <class F>
  void walk(const Chord& c, F&& visit) const;
};

}  // namespace axial
