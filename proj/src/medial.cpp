#include "axial/medial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/polygon/voronoi.hpp>

#include "axial/errors.hpp"

namespace axial {

std::vector<BoundarySample> sample_boundary(const OpenSpace& s, double step,
                                            std::size_t cap) {
  if (!(step > 0.0)) throw StepTooSmall("sampling step must be positive");
  std::vector<BoundarySample> out;
  for (int f = 0; f < s.feature_count(); ++f) {
    const auto& ring = s.ring(f);
    int index = 0;
    double cum = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point2& a = ring[i];
      const Point2& b = ring[(i + 1) % ring.size()];
      double len = distance(a, b);
      int n = std::max(1, static_cast<int>(std::ceil(len / step)));
      for (int k = 0; k < n; ++k) {
        double t = static_cast<double>(k) / n;
        out.push_back({{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)},
                       f,
                       index++,
                       cum + t * len});
        if (out.size() > cap)
          throw StepTooSmall("boundary sampling exceeds the sample cap");
      }
      cum += len;
    }
  }
  return out;
}

namespace {

struct RingInfo {
  int count = 0;
  double perimeter = 0.0;
};

double cyclic_gap(double a, double b, double period) {
  double d = std::abs(a - b);
  return std::min(d, period - d);
}

int cyclic_igap(int a, int b, int n) {
  int d = std::abs(a - b);
  return std::min(d, n - d);
}

}  // namespace

MedialGraph compute_medial_axis(const OpenSpace& s, double step,
                                std::size_t sample_cap) {
  if (step <= 0.0) step = min_clearance(s) / 3.0;
  auto samples = sample_boundary(s, step, sample_cap);

  std::vector<RingInfo> rings(s.feature_count());
  for (const auto& smp : samples) {
    rings[smp.feature].count =
        std::max(rings[smp.feature].count, smp.index + 1);
  }
  for (int f = 0; f < s.feature_count(); ++f) {
    const auto& ring = s.ring(f);
    for (std::size_t i = 0; i < ring.size(); ++i)
      rings[f].perimeter += distance(ring[i], ring[(i + 1) % ring.size()]);
  }

  // Integer sites for the sweep; exact duplicates collapse to the first.
  double ext = std::max(s.maxx() - s.minx(), s.maxy() - s.miny());
  double scale = static_cast<double>(1 << 30) / std::max(ext, 1e-12);
  boost::polygon::default_voronoi_builder builder;
  std::vector<int> site_sample;
  std::unordered_map<std::uint64_t, int> seen;
  seen.reserve(samples.size() * 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto xi = static_cast<std::int64_t>(std::llround((samples[i].point.x - s.minx()) * scale));
    auto yi = static_cast<std::int64_t>(std::llround((samples[i].point.y - s.miny()) * scale));
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(xi)) << 32) |
                        static_cast<std::uint32_t>(yi);
    if (!seen.insert({key, static_cast<int>(i)}).second) continue;
    builder.insert_point(static_cast<std::int32_t>(xi), static_cast<std::int32_t>(yi));
    site_sample.push_back(static_cast<int>(i));
  }
  boost::polygon::voronoi_diagram<double> vd;
  builder.construct(&vd);

  using VdVertex = boost::polygon::voronoi_diagram<double>::vertex_type;
  double tol = std::max(2.0 * s.eps(), 1e-12);
  auto unquant = [&](const VdVertex* v) -> Point2 {
    return {v->x() / scale + s.minx(), v->y() / scale + s.miny()};
  };

  // Merge coincident diagram vertices (co-circular sample degeneracies).
  std::unordered_map<std::uint64_t, std::vector<int>> vmap;
  std::vector<Point2> vpos;
  std::vector<std::vector<int>> vgen;  // candidate sample ids per vertex
  std::unordered_set<const VdVertex*> walked;
  auto vertex_id = [&](const VdVertex* v) -> int {
    Point2 p = unquant(v);
    auto kx = static_cast<std::int64_t>(std::floor(p.x / tol));
    auto ky = static_cast<std::int64_t>(std::floor(p.y / tol));
    int id = -1;
    for (std::int64_t dx = -1; dx <= 1 && id < 0; ++dx)
      for (std::int64_t dy = -1; dy <= 1 && id < 0; ++dy) {
        auto key = static_cast<std::uint64_t>((kx + dx) * 0x9e3779b97f4a7c15LL) ^
                   static_cast<std::uint64_t>(ky + dy);
        auto it = vmap.find(key);
        if (it == vmap.end()) continue;
        for (int cand : it->second)
          if (std::abs(vpos[cand].x - p.x) <= tol &&
              std::abs(vpos[cand].y - p.y) <= tol) {
            id = cand;
            break;
          }
      }
    if (id < 0) {
      id = static_cast<int>(vpos.size());
      vpos.push_back(p);
      vgen.push_back({});
      auto key = static_cast<std::uint64_t>(kx * 0x9e3779b97f4a7c15LL) ^
                 static_cast<std::uint64_t>(ky);
      vmap[key].push_back(id);
    }
    if (walked.insert(v).second) {
      const auto* e = v->incident_edge();
      do {
        vgen[id].push_back(site_sample[e->cell()->source_index()]);
        e = e->rot_next();
      } while (e != v->incident_edge());
    }
    return id;
  };

  std::vector<MedialEdge> raw_edges;
  std::vector<std::pair<int, int>> edge_samples;  // generator sample ids
  std::vector<CellEdge> cell_edges;
  std::unordered_set<std::uint64_t> edge_seen;
  // Truncate a segment leaving the open space at its first boundary crossing.
  auto clip_to_space = [&](Point2 from, Point2 to) -> Point2 {
    Point2 d = to - from;
    double l2 = dot(d, d);
    if (l2 <= 0) return to;
    double best = 1.0;
    for (const auto& be : s.boundary()) {
      auto hit = segment_intersection({from, to}, {be.a, be.b}, s.eps());
      if (!hit) continue;
      double t = dot(*hit - from, d) / l2;
      if (t > 0 && t < best) best = t;
    }
    return from + d * best;
  };
  for (const auto& edge : vd.edges()) {
    if (!(&edge < edge.twin())) continue;
    int sa = site_sample[edge.cell()->source_index()];
    int sb = site_sample[edge.twin()->cell()->source_index()];
    const auto& ga = samples[sa];
    const auto& gb = samples[sb];
    if (!edge.is_finite()) {
      // Bisector of two adjacent collinear samples: an infinite edge whose
      // in-space part runs from its one diagram vertex to the samples'
      // midpoint on the wall.
      const auto* fv = edge.vertex0() ? edge.vertex0() : edge.vertex1();
      if (!fv) continue;
      int rf = vertex_id(fv);
      Point2 ca = vpos[rf];
      Point2 cb{(ga.point.x + gb.point.x) / 2, (ga.point.y + gb.point.y) / 2};
      Point2 cm{(ca.x + cb.x) / 2, (ca.y + cb.y) / 2};
      if (distance(ca, cb) > s.eps() && point_in_open_space(ca, s) &&
          point_in_open_space(cm, s))
        cell_edges.push_back(
            {{ca, cb}, {ga.feature, ga.point}, {gb.feature, gb.point}, rf, -1});
      continue;
    }
    int ra = vertex_id(edge.vertex0());
    int rb = vertex_id(edge.vertex1());
    {
      Point2 ca = vpos[ra], cb = vpos[rb];
      int la = ra, lb = rb;
      bool ins_a = point_in_open_space(ca, s);
      bool ins_b = point_in_open_space(cb, s);
      if (ins_a && !ins_b) {
        cb = clip_to_space(ca, cb);
        lb = -1;
      } else if (ins_b && !ins_a) {
        ca = clip_to_space(cb, ca);
        la = -1;
      }
      Point2 cm{(ca.x + cb.x) / 2, (ca.y + cb.y) / 2};
      if ((ins_a || ins_b) && distance(ca, cb) > s.eps() &&
          point_in_open_space(cm, s))
        cell_edges.push_back(
            {{ca, cb}, {ga.feature, ga.point}, {gb.feature, gb.point}, la, lb});
    }
    if (ga.feature == gb.feature) {
      const auto& info = rings[ga.feature];
      // Close generator pairs on one straight stretch of boundary trace
      // sampling noise between neighbours; pairs straddling a corner (their
      // midpoint leaves the boundary) trace real corner structure instead.
      Point2 gm{(ga.point.x + gb.point.x) / 2, (ga.point.y + gb.point.y) / 2};
      const auto& ring = s.ring(ga.feature);
      double dring = std::numeric_limits<double>::max();
      for (std::size_t i = 0; i < ring.size(); ++i)
        dring = std::min(dring, point_segment_distance(
                                    gm, ring[i], ring[(i + 1) % ring.size()]));
      if (dring <= step * 1e-6) {
        if (cyclic_igap(ga.index, gb.index, info.count) < 2) continue;
        if (cyclic_gap(ga.arc, gb.arc, info.perimeter) <=
            2.0 * step * (1.0 + 1e-9))
          continue;
      }
    }
    int a = ra, b = rb;
    if (a == b) continue;
    Point2 pa = vpos[a], pb = vpos[b];
    Point2 mid{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};
    if (!point_in_open_space(pa, s) || !point_in_open_space(pb, s) ||
        !point_in_open_space(mid, s))
      continue;
    std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
                        static_cast<std::uint32_t>(std::max(a, b));
    if (!edge_seen.insert(key).second) continue;
    raw_edges.push_back(
        {a, b, {ga.feature, ga.point}, {gb.feature, gb.point}});
    edge_samples.emplace_back(sa, sb);
  }
  if (raw_edges.empty()) throw EmptyGraph("no medial edges inside the open space");

  // Largest connected component.
  int nv = static_cast<int>(vpos.size());
  std::vector<std::vector<int>> inc(nv);
  for (std::size_t e = 0; e < raw_edges.size(); ++e) {
    inc[raw_edges[e].a].push_back(static_cast<int>(e));
    inc[raw_edges[e].b].push_back(static_cast<int>(e));
  }
  std::vector<int> comp(nv, -1);
  int ncomp = 0;
  for (int v0 = 0; v0 < nv; ++v0) {
    if (comp[v0] >= 0 || inc[v0].empty()) continue;
    std::queue<int> q;
    q.push(v0);
    comp[v0] = ncomp;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : inc[v]) {
        int w = raw_edges[e].a == v ? raw_edges[e].b : raw_edges[e].a;
        if (comp[w] < 0) {
          comp[w] = ncomp;
          q.push(w);
        }
      }
    }
    ++ncomp;
  }
  std::vector<double> comp_len(ncomp, 0.0);
  for (const auto& e : raw_edges)
    comp_len[comp[e.a]] += distance(vpos[e.a], vpos[e.b]);
  int keep = static_cast<int>(std::max_element(comp_len.begin(), comp_len.end()) -
                              comp_len.begin());

  std::vector<bool> alive(raw_edges.size());
  std::size_t alive_count = 0;
  for (std::size_t e = 0; e < raw_edges.size(); ++e) {
    alive[e] = comp[raw_edges[e].a] == keep;
    alive_count += alive[e];
  }

  // Trim short leaf chains (sampling noise); never empty the graph.
  std::vector<int> deg(nv, 0);
  auto recount = [&]() {
    std::fill(deg.begin(), deg.end(), 0);
    for (std::size_t e = 0; e < raw_edges.size(); ++e)
      if (alive[e]) {
        ++deg[raw_edges[e].a];
        ++deg[raw_edges[e].b];
      }
  };
  recount();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v0 = 0; v0 < nv; ++v0) {
      if (deg[v0] != 1) continue;
      std::vector<int> chain;
      double len = 0.0;
      int cur = v0;
      int via = -1;
      while (true) {
        int nxt_edge = -1;
        for (int e : inc[cur])
          if (alive[e] && e != via) {
            nxt_edge = e;
            break;
          }
        if (nxt_edge < 0) break;
        chain.push_back(nxt_edge);
        len += distance(vpos[raw_edges[nxt_edge].a], vpos[raw_edges[nxt_edge].b]);
        cur = raw_edges[nxt_edge].a == cur ? raw_edges[nxt_edge].b : raw_edges[nxt_edge].a;
        via = nxt_edge;
        if (deg[cur] != 2) break;
      }
      if (len >= step || chain.empty()) continue;
      if (alive_count <= chain.size()) continue;
      for (int e : chain) {
        alive[e] = false;
        --alive_count;
      }
      recount();
      changed = true;
    }
  }

  // Interior points of a Voronoi edge are skeleton points whose maximal disk
  // touches the edge's two generators; densify long edges with them so every
  // skeleton point has a graph vertex nearby.
  {
    std::size_t ne = raw_edges.size();
    for (std::size_t e = 0; e < ne; ++e) {
      if (!alive[e]) continue;
      int a = raw_edges[e].a, b = raw_edges[e].b;
      double elen = distance(vpos[a], vpos[b]);
      if (elen <= 2.0 * step) continue;
      int pieces = static_cast<int>(std::ceil(elen / (1.5 * step)));
      auto gens = edge_samples[e];
      int prev = a;
      for (int k = 1; k < pieces; ++k) {
        double t = static_cast<double>(k) / pieces;
        int nid = static_cast<int>(vpos.size());
        vpos.push_back(vpos[a] + (vpos[b] - vpos[a]) * t);
        vgen.push_back({gens.first, gens.second});
        raw_edges.push_back({prev, nid, raw_edges[e].gen_a, raw_edges[e].gen_b});
        edge_samples.push_back(gens);
        alive.push_back(true);
        prev = nid;
      }
      raw_edges.push_back({prev, b, raw_edges[e].gen_a, raw_edges[e].gen_b});
      edge_samples.push_back(gens);
      alive.push_back(true);
      alive[e] = false;
    }
    nv = static_cast<int>(vpos.size());
    deg.assign(vpos.size(), 0);
    for (std::size_t e = 0; e < raw_edges.size(); ++e)
      if (alive[e]) {
        ++deg[raw_edges[e].a];
        ++deg[raw_edges[e].b];
      }
  }

  // Compact to a deterministic vertex order.
  std::vector<int> order;
  for (int v = 0; v < nv; ++v)
    if (deg[v] > 0) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (vpos[a].x != vpos[b].x) return vpos[a].x < vpos[b].x;
    return vpos[a].y < vpos[b].y;
  });
  std::vector<int> remap(nv, -1);
  MedialGraph g;
  g.step = step;
  for (std::size_t k = 0; k < order.size(); ++k) {
    int v = order[k];
    remap[v] = static_cast<int>(k);
    MedialVertex mv;
    mv.position = vpos[v];
    std::vector<int> cand = vgen[v];
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
      if (samples[a].feature != samples[b].feature)
        return samples[a].feature < samples[b].feature;
      return a < b;
    });
    std::vector<int> picked;
    int last_feature = -1;
    for (int c : cand) {
      if (samples[c].feature == last_feature) continue;
      picked.push_back(c);
      last_feature = samples[c].feature;
      if (picked.size() == 3) break;
    }
    for (int c : cand) {
      if (picked.size() == 3) break;
      if (std::find(picked.begin(), picked.end(), c) == picked.end())
        picked.push_back(c);
    }
    double clear_sum = 0.0;
    for (int c : picked) {
      mv.generators.push_back({samples[c].feature, samples[c].point});
      clear_sum += distance(mv.position, samples[c].point);
    }
    mv.clearance = picked.empty() ? 0.0 : clear_sum / picked.size();
    g.vertices.push_back(std::move(mv));
  }
  for (std::size_t e = 0; e < raw_edges.size(); ++e) {
    if (!alive[e]) continue;
    int a = remap[raw_edges[e].a], b = remap[raw_edges[e].b];
    if (a > b) std::swap(a, b);
    g.edges.push_back({a, b, raw_edges[e].gen_a, raw_edges[e].gen_b});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const MedialEdge& x, const MedialEdge& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  g.adj.assign(g.vertices.size(), {});
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    g.adj[g.edges[e].a].push_back(static_cast<int>(e));
    g.adj[g.edges[e].b].push_back(static_cast<int>(e));
  }
  g.edge_chain.assign(g.edges.size(), -1);
  auto walk_chain = [&](int start_vertex, int first_edge) {
    int chain_id = static_cast<int>(g.chains.size());
    std::vector<int> path{start_vertex};
    int cur = start_vertex, e = first_edge;
    while (true) {
      g.edge_chain[e] = chain_id;
      int nxt = g.other(e, cur);
      path.push_back(nxt);
      if (g.degree(nxt) != 2 || nxt == start_vertex) break;
      int follow = -1;
      for (int cand : g.adj[nxt])
        if (cand != e && g.edge_chain[cand] < 0) follow = cand;
      if (follow < 0) break;
      cur = nxt;
      e = follow;
    }
    g.chains.push_back(std::move(path));
  };
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (g.degree(static_cast<int>(v)) != 2)
      for (int e : g.adj[v])
        if (g.edge_chain[e] < 0) walk_chain(static_cast<int>(v), e);
  for (std::size_t e = 0; e < g.edges.size(); ++e)  // leftovers are cycles
    if (g.edge_chain[e] < 0) walk_chain(g.edges[e].a, static_cast<int>(e));

  std::vector<Point2> positions;
  positions.reserve(g.vertices.size());
  for (const auto& v : g.vertices) positions.push_back(v.position);
  g.vertex_grid = PointGrid(positions);
  g.edge_grid = ChordGrid(s.minx(), s.miny(), s.maxx(), s.maxy(), g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    g.edge_grid.insert(static_cast<int>(e), g.edge_chord(static_cast<int>(e)));
  for (auto& ce : cell_edges) {
    if (ce.va >= 0) ce.va = remap[ce.va];
    if (ce.vb >= 0) ce.vb = remap[ce.vb];
  }
  g.cell_edges = std::move(cell_edges);
  g.cell_grid =
      ChordGrid(s.minx(), s.miny(), s.maxx(), s.maxy(), g.cell_edges.size());
  for (std::size_t e = 0; e < g.cell_edges.size(); ++e)
    g.cell_grid.insert(static_cast<int>(e), g.cell_edges[e].seg);
  if (g.edges.empty()) throw EmptyGraph("medial axis collapsed to nothing");
  return g;
}

int nearest_medial_vertex(const MedialGraph& g, const Point2& p) {
  return g.vertex_grid.nearest(p);
}

std::vector<std::vector<Point2>> medial_polylines(const MedialGraph& g) {
  std::vector<std::vector<Point2>> out;
  out.reserve(g.chains.size());
  for (const auto& path : g.chains) {
    std::vector<Point2> pts;
    pts.reserve(path.size());
    for (int v : path) pts.push_back(g.vertices[v].position);
    out.push_back(std::move(pts));
  }
  return out;
}

std::vector<double> medial_segment_lengths(const MedialGraph& g) {
  std::vector<double> lens;
  for (const auto& pl : medial_polylines(g)) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) len += distance(pl[i], pl[i + 1]);
    lens.push_back(len);
  }
  return lens;
}

double medial_total_length(const MedialGraph& g) {
  double total = 0.0;
  for (const auto& e : g.edges)
    total += distance(g.vertices[e.a].position, g.vertices[e.b].position);
  return total;
}

}  // namespace axial
