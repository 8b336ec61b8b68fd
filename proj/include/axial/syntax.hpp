#pragma once

#include <utility>
#include <vector>

#include "axial/geometry.hpp"

namespace axial {

// Line-intersection graph of an axial map with local space-syntax measures.
struct SyntaxGraph {
  std::vector<Chord> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;
  std::vector<int> connectivity;
  std::vector<double> total_depth;  // within the radius
  std::vector<double> mean_depth;
  std::vector<double> integration;
  int radius = 3;
  double integration_cap = 1e6;
};

// Nodes are the lines; an edge joins every intersecting pair.
SyntaxGraph build_syntax_graph(const std::vector<Chord>& lines, double eps);

// Fills connectivity/depth/integration. A node reaching fewer than three
// lines within the radius scores zero integration.
void compute_local_integration(SyntaxGraph& g, int radius = 3);

int connected_components(const SyntaxGraph& g);

// Node ids by descending integration; ties by id.
std::vector<int> rank_lines(const SyntaxGraph& g);

}  // namespace axial
