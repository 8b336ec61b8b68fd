#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace axial {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

// Directed segment between two boundary hits.
struct Chord {
  Point2 a;
  Point2 b;
  double length() const { return distance(a, b); }
  Point2 midpoint() const { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
};

// Intersection point of two closed segments, if any. Proper crossings and
// endpoint touches (within eps) yield the touch point; collinear overlap
// yields the midpoint of the shared stretch.
std::optional<Point2> segment_intersection(const Chord& s1, const Chord& s2,
                                           double eps = 1e-9);

double point_segment_distance(Point2 p, Point2 a, Point2 b);
double segment_segment_distance(const Chord& s1, const Chord& s2);

double ring_signed_area(const std::vector<Point2>& ring);

// Even-odd test against a single ring; points on the boundary are not
// classified reliably (callers needing boundary tolerance check distance).
bool point_in_ring(Point2 p, const std::vector<Point2>& ring);

double point_ring_distance(Point2 p, const std::vector<Point2>& ring);

struct OpenSpace;

// True when p lies in the walkable region: inside the outer ring, outside
// every hole. Boundary points count as inside within the scene tolerance.
bool point_in_open_space(Point2 p, const OpenSpace& s);

// Narrowest passage of the scene. With holes: the smallest edge-to-edge
// distance between distinct features. Without: the smallest distance
// between non-adjacent edges of the outer ring.
double min_clearance(const OpenSpace& s);

struct BoundaryEdge {
  Point2 a;
  Point2 b;
  int feature = 0;  // 0 = outer, 1.. = holes
};

// Accelerates "which boundary edges can an infinite line hit" queries.
// Grid walks cells with a DDA; the BSP variant recursively halves the
// bounding box. Both return a superset of the edges actually crossed, and
// exactly the set an exhaustive scan would consider hitting.
class SpatialIndex {
 public:
  enum class Kind { Grid, Bsp };

  explicit SpatialIndex(const OpenSpace& s, Kind kind = Kind::Grid);

  // Candidate edge ids for the infinite line through origin with direction
  // dir (not necessarily unit). Sorted, unique.
  void line_candidates(Point2 origin, Point2 dir,
                       std::vector<std::uint32_t>& out) const;

  const std::vector<BoundaryEdge>& edges() const { return edges_; }
  Kind kind() const { return kind_; }

 private:
  struct BspNode {
    int axis = -1;  // -1 = leaf
    double split = 0.0;
    int child[2] = {-1, -1};
    std::vector<std::uint32_t> ids;  // leaf payload
  };

  void build_grid();
  void build_bsp();
  int build_bsp_node(std::vector<std::uint32_t> ids, double lo[2], double hi[2],
                     int depth);
  void bsp_collect(int node, Point2 origin, Point2 dir, double t0, double t1,
                   double lo[2], double hi[2],
                   std::vector<std::uint32_t>& out) const;

  Kind kind_;
  std::vector<BoundaryEdge> edges_;
  double minx_ = 0, miny_ = 0, maxx_ = 0, maxy_ = 0;
  // grid
  int nx_ = 1, ny_ = 1;
  double cw_ = 1, ch_ = 1;
  std::vector<std::vector<std::uint32_t>> cells_;
  // bsp
  std::vector<BspNode> nodes_;
};

// Maximal free chord of the infinite line through origin at direction_deg
// (degrees, CCW from +x). Origin must lie in open space; chord endpoints sit
// on boundary edges. The returned chord points from the t<0 hit to the t>0
// hit along the direction.
Chord clip_ray(Point2 origin, double direction_deg, const OpenSpace& s,
               const SpatialIndex& idx);

// Exhaustive-scan variant, no index.
Chord clip_ray(Point2 origin, double direction_deg, const OpenSpace& s);

namespace detail {
// Precondition-unchecked core used by the fan loops after one containment
// check; candidates must cover every edge the line can hit.
Chord clip_line(Point2 origin, Point2 dir, const OpenSpace& s,
                const std::vector<BoundaryEdge>& edges,
                const std::vector<std::uint32_t>* candidates);
Point2 unit_from_degrees(double deg);
}  // namespace detail

}  // namespace axial
