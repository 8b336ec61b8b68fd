#include "axial/bucket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "axial/errors.hpp"

namespace axial {

namespace {

bool ring_is_simple(const std::vector<Point2>& ring, double eps) {
  std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    Chord a{ring[i], ring[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      Chord b{ring[j], ring[(j + 1) % n]};
      if (segment_intersection(a, b, eps)) return false;
    }
  }
  return true;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  return hull;
}

void collapse_straight_runs(std::vector<Point2>& ring, double eps) {
  bool changed = true;
  while (changed && ring.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size() && ring.size() > 3; ++i) {
      const Point2& prev = ring[(i + ring.size() - 1) % ring.size()];
      const Point2& mid = ring[i];
      const Point2& next = ring[(i + 1) % ring.size()];
      Point2 v1 = mid - prev, v2 = next - mid;
      if (std::abs(cross(v1, v2)) <= eps * (norm(v1) + norm(v2)) &&
          dot(v1, v2) >= 0.0) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
}

}  // namespace

Bucket form_bucket(const Ray& ray, const OpenSpace& s, const MedialGraph& g) {
  const Chord& c = ray.chord;
  double eps = s.eps();
  double len = c.length();
  Point2 u = len > 0 ? (c.b - c.a) * (1.0 / len) : Point2{1, 0};

  std::vector<Point2> pts;
  std::vector<Generator> gpts;
  auto add_vertex_generators = [&](int v) {
    for (const auto& gen : g.vertices[v].generators) {
      pts.push_back(gen.point);
      gpts.push_back(gen);
    }
  };
  int e1v = nearest_medial_vertex(g, c.a);
  int e2v = nearest_medial_vertex(g, c.b);
  if (e1v >= 0) add_vertex_generators(e1v);
  if (e2v >= 0) add_vertex_generators(e2v);

  // Skeleton crossings must be resolved: each one needs a graph vertex
  // within two sample steps.
  std::vector<int> candidates;
  g.edge_grid.segment_candidates(c, candidates);
  for (int e : candidates) {
    auto hit = segment_intersection(c, g.edge_chord(e), eps);
    if (!hit) continue;
    const Point2& pa = g.vertices[g.edges[e].a].position;
    const Point2& pb = g.vertices[g.edges[e].b].position;
    if (std::min(distance(*hit, pa), distance(*hit, pb)) > 2.0 * g.step)
      throw AssociationFailure("skeleton crossing too far from its vertices");
  }

  // Cut the chord against every Voronoi cell boundary it crosses. The two
  // samples each crossed boundary bisects trace the wall the ray hugs; the
  // skeleton vertices at the boundary's ends carry the opposite wall, so the
  // bucket spans the corridor's full width. A chord grazing a diagram vertex
  // cuts its incident boundaries end-on and drags in cells the ray never
  // enters; nudge the probe sideways and retry until the cuts are clean.
  std::size_t base_pts = pts.size(), base_gpts = gpts.size();
  Chord probe = c;
  for (int attempt = 0;; ++attempt) {
    bool grazed = false;
    candidates.clear();
    g.cell_grid.segment_candidates(probe, candidates);
    for (int e : candidates) {
      const CellEdge& ce = g.cell_edges[e];
      auto hit = segment_intersection(probe, ce.seg, eps);
      if (!hit) continue;
      if (std::min(distance(*hit, ce.seg.a), distance(*hit, ce.seg.b)) <=
          2.0 * eps)
        grazed = true;
      pts.push_back(ce.gen_a.point);
      gpts.push_back(ce.gen_a);
      pts.push_back(ce.gen_b.point);
      gpts.push_back(ce.gen_b);
      if (ce.va >= 0) add_vertex_generators(ce.va);
      if (ce.vb >= 0) add_vertex_generators(ce.vb);
    }
    if (!grazed || attempt >= 2) break;
    pts.resize(base_pts);
    gpts.resize(base_gpts);
    double delta = 16.0 * eps * (attempt + 1);
    Point2 nrm{-u.y, u.x};
    probe = {c.a + nrm * delta, c.b + nrm * delta};
  }

  // A vertex's clearance disk is the widest open circle at that point, so a
  // chord passing inside it traverses the space the vertex spans wall to
  // wall, and its generators join the chain. Junction vertices donate a
  // street crossing's full extent this way; the cut chain alone hugs
  // whichever side of the crossing the chord threads.
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& mv = g.vertices[v];
    if (point_segment_distance(mv.position, c.a, c.b) < mv.clearance - eps)
      add_vertex_generators(static_cast<int>(v));
  }

  // The collected points are boundary samples; straight segments between
  // samples on either side of a polygon corner would chamfer it. Bridge
  // short wall gaps with the corners they skip.
  {
    auto ring_arc = [&](const std::vector<Point2>& ring, Point2 p,
                        double& out_dist) {
      std::size_t n = ring.size();
      double best = std::numeric_limits<double>::infinity();
      double best_arc = 0.0, walked = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Point2 a = ring[i], d = ring[(i + 1) % n] - ring[i];
        double l2 = dot(d, d);
        double tt = l2 > 0 ? std::clamp(dot(p - a, d) / l2, 0.0, 1.0) : 0.0;
        Point2 q = a + d * tt;
        double dist_q = distance(p, q);
        if (dist_q < best) {
          best = dist_q;
          best_arc = walked + distance(a, q);
        }
        walked += std::sqrt(l2);
      }
      out_dist = best;
      return best_arc;
    };
    std::map<int, std::vector<double>> arcs_by_feature;
    double unused;
    for (const auto& gp : gpts)
      arcs_by_feature[gp.feature].push_back(
          ring_arc(s.ring(gp.feature), gp.point, unused));
    // The chord endpoints sit on walls too and anchor the bucket's end caps.
    for (Point2 ep : {c.a, c.b}) {
      int best_f = -1;
      double best_d = std::numeric_limits<double>::infinity(), best_arc = 0.0;
      for (int f = 0; f < s.feature_count(); ++f) {
        double d;
        double arc = ring_arc(s.ring(f), ep, d);
        if (d < best_d) {
          best_d = d;
          best_f = f;
          best_arc = arc;
        }
      }
      if (best_f >= 0 && best_d <= 2.0 * g.step)
        arcs_by_feature[best_f].push_back(best_arc);
    }
    for (auto& [feature, arcs] : arcs_by_feature) {
      const auto& ring = s.ring(feature);
      std::size_t n = ring.size();
      std::vector<double> corner_arc(n);
      double perim = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        corner_arc[i] = perim;
        perim += distance(ring[i], ring[(i + 1) % n]);
      }
      std::sort(arcs.begin(), arcs.end());
      arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        double a = arcs[i];
        double b = i + 1 < arcs.size() ? arcs[i + 1] : arcs.front() + perim;
        if (b - a > 4.5 * g.step || b - a <= eps) continue;
        for (std::size_t j = 0; j < n; ++j)
          for (double ca : {corner_arc[j], corner_arc[j] + perim})
            if (ca > a + eps && ca < b - eps) pts.push_back(ring[j]);
      }
    }
  }

  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [eps](const Point2& a, const Point2& b) {
                          return distance(a, b) <= eps;
                        }),
            pts.end());

  struct SidePoint {
    Point2 p;
    double t, sd;
  };
  std::vector<SidePoint> left, right;
  Point2 e1 = c.a, e2 = c.b;
  double min_t = 0.0, max_t = len;
  for (const auto& p : pts) {
    double t = dot(p - c.a, u);
    double sd = cross(u, p - c.a);
    if (sd > eps)
      left.push_back({p, t, sd});
    else if (sd < -eps)
      right.push_back({p, t, sd});
    else if (t < min_t - eps) {
      min_t = t;
      e1 = p;
    } else if (t > max_t + eps) {
      max_t = t;
      e2 = p;
    }
  }
  auto by_axis = [](const SidePoint& a, const SidePoint& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.sd != b.sd) return a.sd < b.sd;
    if (a.p.x != b.p.x) return a.p.x < b.p.x;
    return a.p.y < b.p.y;
  };
  std::sort(left.begin(), left.end(), by_axis);
  std::sort(right.begin(), right.end(), by_axis);

  Bucket b;
  b.ray_id = ray.id;
  b.chain = {e1, e2};
  b.ring.push_back(e1);
  for (const auto& sp : left) b.ring.push_back(sp.p);
  b.ring.push_back(e2);
  for (auto it = right.rbegin(); it != right.rend(); ++it) b.ring.push_back(it->p);
  collapse_straight_runs(b.ring, eps);

  bool ok = b.ring.size() >= 3 && ring_is_simple(b.ring, eps) &&
            chord_fraction_in_ring(c, b.ring, eps) >= 0.99;
  if (!ok) {
    std::vector<Point2> all(pts);
    all.push_back(c.a);
    all.push_back(c.b);
    all.push_back(e1);
    all.push_back(e2);
    b.ring = convex_hull(std::move(all));
    b.hull_fallback = true;
  }

  b.minx = b.miny = std::numeric_limits<double>::infinity();
  b.maxx = b.maxy = -std::numeric_limits<double>::infinity();
  for (const auto& p : b.ring) {
    b.minx = std::min(b.minx, p.x);
    b.miny = std::min(b.miny, p.y);
    b.maxx = std::max(b.maxx, p.x);
    b.maxy = std::max(b.maxy, p.y);
  }
  return b;
}

void chord_ring_intervals(const Chord& c, const std::vector<Point2>& ring,
                          double eps,
                          std::vector<std::pair<double, double>>& out) {
  out.clear();
  if (ring.size() < 3) return;
  double len = c.length();
  if (len <= eps) {
    if (point_in_ring(c.midpoint(), ring)) out.push_back({0.0, 1.0});
    return;
  }
  Point2 u = (c.b - c.a) * (1.0 / len);
  std::vector<double> ts{0.0, 1.0};
  std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto hit = segment_intersection(c, {ring[i], ring[(i + 1) % n]}, eps);
    if (hit) {
      double t = dot(*hit - c.a, u) / len;
      ts.push_back(std::clamp(t, 0.0, 1.0));
    }
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    double dt = ts[i + 1] - ts[i];
    if (dt <= 0) continue;
    Point2 mid = c.a + u * (len * (ts[i] + ts[i + 1]) / 2.0);
    if (!point_in_ring(mid, ring)) continue;
    if (!out.empty() && out.back().second >= ts[i])
      out.back().second = ts[i + 1];
    else
      out.push_back({ts[i], ts[i + 1]});
  }
}

double chord_fraction_in_ring(const Chord& c, const std::vector<Point2>& ring,
                              double eps) {
  std::vector<std::pair<double, double>> iv;
  chord_ring_intervals(c, ring, eps, iv);
  double inside = 0.0;
  for (const auto& [a, b] : iv) inside += b - a;
  return inside;
}

double chord_fraction_in_buckets(const Chord& c,
                                 const std::vector<Bucket>& buckets,
                                 double eps) {
  std::vector<std::pair<double, double>> all, iv;
  for (const auto& b : buckets) {
    if (std::min(c.a.x, c.b.x) > b.maxx + eps ||
        std::max(c.a.x, c.b.x) < b.minx - eps ||
        std::min(c.a.y, c.b.y) > b.maxy + eps ||
        std::max(c.a.y, c.b.y) < b.miny - eps)
      continue;
    chord_ring_intervals(c, b.ring, eps, iv);
    all.insert(all.end(), iv.begin(), iv.end());
  }
  if (all.empty()) return 0.0;
  std::sort(all.begin(), all.end());
  double inside = 0.0, lo = all[0].first, hi = all[0].second;
  for (const auto& [a, b] : all) {
    if (a > hi) {
      inside += hi - lo;
      lo = a;
      hi = b;
    } else {
      hi = std::max(hi, b);
    }
  }
  inside += hi - lo;
  return inside;
}

bool ray_in_bucket(const Chord& candidate, const Bucket& b, double theta,
                   double eps) {
  double pad = eps + 0.02 * candidate.length();
  if (std::min(candidate.a.x, candidate.b.x) < b.minx - pad ||
      std::max(candidate.a.x, candidate.b.x) > b.maxx + pad ||
      std::min(candidate.a.y, candidate.b.y) < b.miny - pad ||
      std::max(candidate.a.y, candidate.b.y) > b.maxy + pad)
    return false;
  return chord_fraction_in_ring(candidate, b.ring, eps) >= theta;
}

}  // namespace axial
