#pragma once

#include <cstddef>
#include <vector>

#include "axial/geometry.hpp"
#include "axial/grids.hpp"
#include "axial/openspace.hpp"

namespace axial {

struct BoundarySample {
  Point2 point;
  int feature;
  int index;   // position along its feature ring
  double arc;  // arc length from the ring's first vertex
};

// Samples every boundary ring at roughly the given spacing. Each edge
// contributes ceil(len/step) evenly spaced points starting at its first
// vertex; ring vertices are therefore always present.
std::vector<BoundarySample> sample_boundary(const OpenSpace& s, double step,
                                            std::size_t cap = 2000000);

struct Generator {
  int feature;
  Point2 point;
};

struct MedialVertex {
  Point2 position;
  double clearance;
  std::vector<Generator> generators;  // up to 3, distinct features first
};

struct MedialEdge {
  int a, b;
  Generator gen_a, gen_b;  // the two boundary samples this edge bisects
};

// One boundary of a Voronoi cell in the raw diagram, before spur/corner
// filtering. Buckets cut rays against these, so a ray travelling along a
// corridor picks up every wall sample it passes. va/vb tie the boundary back
// to the surviving skeleton vertices at its ends (-1 when filtered out).
struct CellEdge {
  Chord seg;
  Generator gen_a, gen_b;
  int va = -1, vb = -1;
};

struct MedialGraph {
  std::vector<MedialVertex> vertices;
  std::vector<MedialEdge> edges;
  std::vector<std::vector<int>> adj;  // incident edge ids per vertex
  std::vector<std::vector<int>> chains;  // vertex paths between junctions/leaves
  std::vector<int> edge_chain;           // edge id -> chain id
  double step = 0;
  PointGrid vertex_grid;
  ChordGrid edge_grid;
  std::vector<CellEdge> cell_edges;
  ChordGrid cell_grid;

  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  int other(int e, int v) const {
    return edges[e].a == v ? edges[e].b : edges[e].a;
  }
  Chord edge_chord(int e) const {
    return {vertices[edges[e].a].position, vertices[edges[e].b].position};
  }
};

// Skeleton of the open space, approximated by the Voronoi diagram of the
// boundary samples. step defaults to min_clearance/3.
MedialGraph compute_medial_axis(const OpenSpace& s, double step = 0.0,
                                std::size_t sample_cap = 2000000);

int nearest_medial_vertex(const MedialGraph& g, const Point2& p);

// Maximal chains between junction/leaf vertices (plus closed loops).
std::vector<std::vector<Point2>> medial_polylines(const MedialGraph& g);
std::vector<double> medial_segment_lengths(const MedialGraph& g);
double medial_total_length(const MedialGraph& g);

}  // namespace axial
