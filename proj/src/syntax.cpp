#include "axial/syntax.hpp"

#include <algorithm>
#include <queue>

namespace axial {

SyntaxGraph build_syntax_graph(const std::vector<Chord>& lines, double eps) {
  SyntaxGraph g;
  g.nodes = lines;
  g.adj.assign(lines.size(), {});
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (segment_intersection(lines[i], lines[j], eps)) {
        g.edges.push_back({static_cast<int>(i), static_cast<int>(j)});
        g.adj[i].push_back(static_cast<int>(j));
        g.adj[j].push_back(static_cast<int>(i));
      }
  g.connectivity.assign(lines.size(), 0);
  for (std::size_t i = 0; i < lines.size(); ++i)
    g.connectivity[i] = static_cast<int>(g.adj[i].size());
  return g;
}

void compute_local_integration(SyntaxGraph& g, int radius) {
  std::size_t n = g.nodes.size();
  g.radius = radius;
  g.total_depth.assign(n, 0.0);
  g.mean_depth.assign(n, 0.0);
  g.integration.assign(n, 0.0);
  std::vector<int> depth(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(depth.begin(), depth.end(), -1);
    std::queue<int> q;
    q.push(static_cast<int>(v));
    depth[v] = 0;
    double td = 0.0;
    std::size_t k = 1;
    while (!q.empty()) {
      int cur = q.front();
      q.pop();
      if (depth[cur] >= radius) continue;
      for (int nb : g.adj[cur])
        if (depth[nb] < 0) {
          depth[nb] = depth[cur] + 1;
          td += depth[nb];
          ++k;
          q.push(nb);
        }
    }
    g.total_depth[v] = td;
    if (k < 3) continue;  // too small a neighbourhood to normalise
    double md = td / static_cast<double>(k - 1);
    double ra = 2.0 * (md - 1.0) / static_cast<double>(k - 2);
    g.mean_depth[v] = md;
    g.integration[v] = ra <= 1e-12 ? g.integration_cap
                                   : std::min(1.0 / ra, g.integration_cap);
  }
}

int connected_components(const SyntaxGraph& g) {
  std::size_t n = g.nodes.size();
  std::vector<char> seen(n, 0);
  int comps = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v]) continue;
    ++comps;
    std::queue<int> q;
    q.push(static_cast<int>(v));
    seen[v] = 1;
    while (!q.empty()) {
      int cur = q.front();
      q.pop();
      for (int nb : g.adj[cur])
        if (!seen[nb]) {
          seen[nb] = 1;
          q.push(nb);
        }
    }
  }
  return comps;
}

std::vector<int> rank_lines(const SyntaxGraph& g) {
  std::vector<int> order(g.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.integration[a] != g.integration[b])
      return g.integration[a] > g.integration[b];
    return a < b;
  });
  return order;
}

}  // namespace axial
