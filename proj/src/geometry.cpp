#include "axial/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "axial/errors.hpp"
#include "axial/openspace.hpp"

namespace axial {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::optional<Point2> segment_intersection(const Chord& s1, const Chord& s2,
                                           double eps) {
  const Point2 r = s1.b - s1.a;
  const Point2 q = s2.b - s2.a;
  const double lr = norm(r);
  const double lq = norm(q);

  if (lr <= eps && lq <= eps) {
    if (distance(s1.a, s2.a) <= eps) return s1.a;
    return std::nullopt;
  }
  if (lr <= eps) {
    if (point_segment_distance(s1.a, s2.a, s2.b) <= eps) return s1.a;
    return std::nullopt;
  }
  if (lq <= eps) {
    if (point_segment_distance(s2.a, s1.a, s1.b) <= eps) return s2.a;
    return std::nullopt;
  }

  const double den = cross(r, q);
  if (std::abs(den) > 1e-12 * lr * lq) {
    const Point2 w = s2.a - s1.a;
    const double t = cross(w, q) / den;
    const double u = cross(w, r) / den;
    const double et = eps / lr;
    const double eu = eps / lq;
    if (t < -et || t > 1.0 + et || u < -eu || u > 1.0 + eu)
      return std::nullopt;
    const double tc = std::clamp(t, 0.0, 1.0);
    return s1.a + tc * r;
  }

  // Parallel. Blocks only when the supporting lines coincide.
  const double off = std::abs(cross(s2.a - s1.a, r)) / lr;
  if (off > eps) return std::nullopt;
  const double inv = 1.0 / dot(r, r);
  double t0 = dot(s2.a - s1.a, r) * inv;
  double t1 = dot(s2.b - s1.a, r) * inv;
  if (t0 > t1) std::swap(t0, t1);
  const double et = eps / lr;
  const double lo = std::max(0.0, t0);
  const double hi = std::min(1.0, t1);
  if (lo > hi + et) return std::nullopt;
  const double tm = std::clamp(0.5 * (lo + hi), 0.0, 1.0);
  return s1.a + tm * r;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 e = b - a;
  const double len2 = dot(e, e);
  if (len2 <= 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, e) / len2, 0.0, 1.0);
  return distance(p, a + t * e);
}

double segment_segment_distance(const Chord& s1, const Chord& s2) {
  const Point2 r = s1.b - s1.a;
  const Point2 q = s2.b - s2.a;
  const double den = cross(r, q);
  if (std::abs(den) > 1e-14 * norm(r) * norm(q)) {
    const Point2 w = s2.a - s1.a;
    const double t = cross(w, q) / den;
    const double u = cross(w, r) / den;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) return 0.0;
  }
  double d = point_segment_distance(s1.a, s2.a, s2.b);
  d = std::min(d, point_segment_distance(s1.b, s2.a, s2.b));
  d = std::min(d, point_segment_distance(s2.a, s1.a, s1.b));
  d = std::min(d, point_segment_distance(s2.b, s1.a, s1.b));
  return d;
}

double ring_signed_area(const std::vector<Point2>& ring) {
  double a = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = ring[i];
    const Point2& q = ring[(i + 1) % n];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

bool point_in_ring(Point2 p, const std::vector<Point2>& ring) {
  bool in = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xi) in = !in;
    }
  }
  return in;
}

double point_ring_distance(Point2 p, const std::vector<Point2>& ring) {
  double d = kInf;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i)
    d = std::min(d, point_segment_distance(p, ring[i], ring[(i + 1) % n]));
  return d;
}

bool point_in_open_space(Point2 p, const OpenSpace& s) {
  double bd = kInf;
  for (const BoundaryEdge& e : s.boundary())
    bd = std::min(bd, point_segment_distance(p, e.a, e.b));
  if (bd <= s.eps()) return true;
  if (!point_in_ring(p, s.outer)) return false;
  for (const auto& h : s.holes)
    if (point_in_ring(p, h)) return false;
  return true;
}

namespace {

double min_ring_pair_distance(const std::vector<Point2>& r1,
                              const std::vector<Point2>& r2) {
  double d = kInf;
  const std::size_t n1 = r1.size(), n2 = r2.size();
  for (std::size_t i = 0; i < n1; ++i) {
    const Chord e1{r1[i], r1[(i + 1) % n1]};
    for (std::size_t j = 0; j < n2; ++j) {
      const Chord e2{r2[j], r2[(j + 1) % n2]};
      d = std::min(d, segment_segment_distance(e1, e2));
    }
  }
  return d;
}

}  // namespace

double min_clearance(const OpenSpace& s) {
  double d = kInf;
  if (s.holes.empty()) {
    // Narrowest width of the boundary itself: closest non-adjacent edge pair.
    const auto& r = s.outer;
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;  // shares a vertex
        const Chord e1{r[i], r[(i + 1) % n]};
        const Chord e2{r[j], r[(j + 1) % n]};
        d = std::min(d, segment_segment_distance(e1, e2));
      }
    }
    if (d == kInf) {
      // Triangles have no non-adjacent pairs; fall back to altitudes.
      for (std::size_t i = 0; i < n; ++i)
        d = std::min(d, point_segment_distance(r[i], r[(i + 1) % n],
                                               r[(i + 2) % n]));
    }
  } else {
    for (int f1 = 0; f1 < s.feature_count(); ++f1)
      for (int f2 = f1 + 1; f2 < s.feature_count(); ++f2)
        d = std::min(d, min_ring_pair_distance(s.ring(f1), s.ring(f2)));
  }
  if (!(d > s.eps()))
    throw DegenerateScene("features touch or coincide (clearance " +
                          std::to_string(d) + ")");
  return d;
}

// ---------------------------------------------------------------------------
// SpatialIndex

SpatialIndex::SpatialIndex(const OpenSpace& s, Kind kind) : kind_(kind) {
  edges_ = s.boundary();
  minx_ = s.minx() - s.eps();
  miny_ = s.miny() - s.eps();
  maxx_ = s.maxx() + s.eps();
  maxy_ = s.maxy() + s.eps();
  if (kind_ == Kind::Grid)
    build_grid();
  else
    build_bsp();
}

void SpatialIndex::build_grid() {
  const std::size_t ne = edges_.size();
  int n = static_cast<int>(std::ceil(std::sqrt(4.0 * double(ne))));
  n = std::clamp(n, 8, 512);
  nx_ = ny_ = n;
  cw_ = std::max((maxx_ - minx_) / nx_, 1e-12);
  ch_ = std::max((maxy_ - miny_) / ny_, 1e-12);
  cells_.assign(std::size_t(nx_) * ny_, {});
  const double pad = 1e-9 * std::max(maxx_ - minx_, maxy_ - miny_) +
                     0.5e-3 * std::min(cw_, ch_);
  for (std::uint32_t id = 0; id < ne; ++id) {
    const BoundaryEdge& e = edges_[id];
    const double exl = std::min(e.a.x, e.b.x) - pad;
    const double exh = std::max(e.a.x, e.b.x) + pad;
    const double eyl = std::min(e.a.y, e.b.y) - pad;
    const double eyh = std::max(e.a.y, e.b.y) + pad;
    const int ix0 = std::clamp(int((exl - minx_) / cw_), 0, nx_ - 1);
    const int ix1 = std::clamp(int((exh - minx_) / cw_), 0, nx_ - 1);
    const int iy0 = std::clamp(int((eyl - miny_) / ch_), 0, ny_ - 1);
    const int iy1 = std::clamp(int((eyh - miny_) / ch_), 0, ny_ - 1);
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        // Register only where the edge actually passes near the cell, else
        // long diagonals would fill their whole bbox.
        const double cxl = minx_ + ix * cw_ - pad;
        const double cxh = minx_ + (ix + 1) * cw_ + pad;
        const double cyl = miny_ + iy * ch_ - pad;
        const double cyh = miny_ + (iy + 1) * ch_ + pad;
        const Point2 c{0.5 * (cxl + cxh), 0.5 * (cyl + cyh)};
        const double half = 0.5 * std::max(cxh - cxl, cyh - cyl);
        if (point_segment_distance(c, e.a, e.b) <= half * 1.4143)
          cells_[std::size_t(iy) * nx_ + ix].push_back(id);
      }
    }
  }
}

void SpatialIndex::line_candidates(Point2 origin, Point2 dir,
                                   std::vector<std::uint32_t>& out) const {
  out.clear();
  if (kind_ == Kind::Bsp) {
    double lo[2] = {minx_, miny_};
    double hi[2] = {maxx_, maxy_};
    bsp_collect(0, origin, dir, -kInf, kInf, lo, hi, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return;
  }

  // Clip the infinite line to the grid bbox.
  double t0 = -kInf, t1 = kInf;
  const double bounds[2][2] = {{minx_, maxx_}, {miny_, maxy_}};
  const double o[2] = {origin.x, origin.y};
  const double d[2] = {dir.x, dir.y};
  for (int ax = 0; ax < 2; ++ax) {
    if (std::abs(d[ax]) < 1e-300) {
      if (o[ax] < bounds[ax][0] || o[ax] > bounds[ax][1]) return;
    } else {
      double ta = (bounds[ax][0] - o[ax]) / d[ax];
      double tb = (bounds[ax][1] - o[ax]) / d[ax];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    }
  }
  if (t0 > t1) return;

  // Walk cells along the line (both directions covered by [t0, t1]).
  const Point2 start = origin + t0 * dir;
  int ix = std::clamp(int((start.x - minx_) / cw_), 0, nx_ - 1);
  int iy = std::clamp(int((start.y - miny_) / ch_), 0, ny_ - 1);
  const int sx = dir.x > 0 ? 1 : (dir.x < 0 ? -1 : 0);
  const int sy = dir.y > 0 ? 1 : (dir.y < 0 ? -1 : 0);
  const double tdx = sx != 0 ? std::abs(cw_ / dir.x) : kInf;
  const double tdy = sy != 0 ? std::abs(ch_ / dir.y) : kInf;
  double tmx = kInf, tmy = kInf;
  if (sx > 0)
    tmx = t0 + ((minx_ + (ix + 1) * cw_) - start.x) / dir.x;
  else if (sx < 0)
    tmx = t0 + ((minx_ + ix * cw_) - start.x) / dir.x;
  if (sy > 0)
    tmy = t0 + ((miny_ + (iy + 1) * ch_) - start.y) / dir.y;
  else if (sy < 0)
    tmy = t0 + ((miny_ + iy * ch_) - start.y) / dir.y;

  while (true) {
    const auto& cell = cells_[std::size_t(iy) * nx_ + ix];
    out.insert(out.end(), cell.begin(), cell.end());
    if (std::min(tmx, tmy) > t1) break;
    if (tmx <= tmy) {
      ix += sx;
      if (ix < 0 || ix >= nx_) break;
      tmx += tdx;
    } else {
      iy += sy;
      if (iy < 0 || iy >= ny_) break;
      tmy += tdy;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

void SpatialIndex::build_bsp() {
  std::vector<std::uint32_t> ids(edges_.size());
  for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = i;
  nodes_.clear();
  double lo[2] = {minx_, miny_};
  double hi[2] = {maxx_, maxy_};
  build_bsp_node(std::move(ids), lo, hi, 0);
}

int SpatialIndex::build_bsp_node(std::vector<std::uint32_t> ids, double lo[2],
                                 double hi[2], int depth) {
  const int me = int(nodes_.size());
  nodes_.emplace_back();
  if (ids.size() <= 12 || depth >= 20) {
    nodes_[me].ids = std::move(ids);
    return me;
  }
  const int axis = (hi[0] - lo[0] >= hi[1] - lo[1]) ? 0 : 1;
  const double split = 0.5 * (lo[axis] + hi[axis]);
  const double pad = 1e-9 * std::max(maxx_ - minx_, maxy_ - miny_);
  std::vector<std::uint32_t> left, right;
  for (std::uint32_t id : ids) {
    const BoundaryEdge& e = edges_[id];
    const double el = std::min(axis == 0 ? e.a.x : e.a.y,
                               axis == 0 ? e.b.x : e.b.y) - pad;
    const double eh = std::max(axis == 0 ? e.a.x : e.a.y,
                               axis == 0 ? e.b.x : e.b.y) + pad;
    if (el <= split) left.push_back(id);
    if (eh >= split) right.push_back(id);
  }
  // Give up splitting when nothing separates; avoids unbounded duplication.
  if (left.size() == ids.size() && right.size() == ids.size()) {
    nodes_[me].ids = std::move(ids);
    return me;
  }
  ids.clear();
  ids.shrink_to_fit();
  nodes_[me].axis = axis;
  nodes_[me].split = split;
  double midhi[2] = {hi[0], hi[1]};
  midhi[axis] = split;
  double midlo[2] = {lo[0], lo[1]};
  midlo[axis] = split;
  const int l = build_bsp_node(std::move(left), lo, midhi, depth + 1);
  nodes_[me].child[0] = l;
  const int r = build_bsp_node(std::move(right), midlo, hi, depth + 1);
  nodes_[me].child[1] = r;
  return me;
}

void SpatialIndex::bsp_collect(int node, Point2 origin, Point2 dir, double t0,
                               double t1, double lo[2], double hi[2],
                               std::vector<std::uint32_t>& out) const {
  // Clip the line's parameter interval to this node's box.
  const double o[2] = {origin.x, origin.y};
  const double d[2] = {dir.x, dir.y};
  double a = t0, b = t1;
  for (int ax = 0; ax < 2; ++ax) {
    if (std::abs(d[ax]) < 1e-300) {
      if (o[ax] < lo[ax] || o[ax] > hi[ax]) return;
    } else {
      double ta = (lo[ax] - o[ax]) / d[ax];
      double tb = (hi[ax] - o[ax]) / d[ax];
      if (ta > tb) std::swap(ta, tb);
      a = std::max(a, ta);
      b = std::min(b, tb);
    }
  }
  if (a > b) return;
  const BspNode& n = nodes_[node];
  if (n.axis < 0) {
    out.insert(out.end(), n.ids.begin(), n.ids.end());
    return;
  }
  double midhi[2] = {hi[0], hi[1]};
  midhi[n.axis] = n.split;
  double midlo[2] = {lo[0], lo[1]};
  midlo[n.axis] = n.split;
  bsp_collect(n.child[0], origin, dir, a, b, lo, midhi, out);
  bsp_collect(n.child[1], origin, dir, a, b, midlo, hi, out);
}

// ---------------------------------------------------------------------------
// Ray clipping

namespace detail {

Point2 unit_from_degrees(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0) d += 360.0;
  if (d == 0.0) return {1.0, 0.0};
  if (d == 90.0) return {0.0, 1.0};
  if (d == 180.0) return {-1.0, 0.0};
  if (d == 270.0) return {0.0, -1.0};
  const double rad = d * (3.14159265358979323846 / 180.0);
  return {std::cos(rad), std::sin(rad)};
}

Chord clip_line(Point2 origin, Point2 dir, const OpenSpace& s,
                const std::vector<BoundaryEdge>& edges,
                const std::vector<std::uint32_t>* candidates) {
  const double eps = s.eps();
  double tpos = kInf, tneg = -kInf;
  const std::size_t n = candidates ? candidates->size() : edges.size();
  for (std::size_t k = 0; k < n; ++k) {
    const BoundaryEdge& e = edges[candidates ? (*candidates)[k] : k];
    const Point2 ev = e.b - e.a;
    const double den = cross(dir, ev);
    const double elen = norm(ev);
    if (std::abs(den) <= 1e-14 * elen) continue;  // parallel never blocks
    const Point2 w = e.a - origin;
    const double t = cross(w, ev) / den;
    const double u = cross(w, dir) / den;
    const double eu = eps / std::max(elen, 1e-300);
    if (u < -eu || u > 1.0 + eu) continue;
    if (t >= 0.0) {
      if (t < tpos) tpos = t;
    } else {
      if (t > tneg) tneg = t;
    }
  }
  if (tpos == kInf || tneg == -kInf)
    throw OriginOutside("ray escaped the boundary");
  return {origin + tneg * dir, origin + tpos * dir};
}

}  // namespace detail

Chord clip_ray(Point2 origin, double direction_deg, const OpenSpace& s,
               const SpatialIndex& idx) {
  if (!point_in_open_space(origin, s))
    throw OriginOutside("clip origin not in open space");
  const Point2 dir = detail::unit_from_degrees(direction_deg);
  std::vector<std::uint32_t> cand;
  idx.line_candidates(origin, dir, cand);
  return detail::clip_line(origin, dir, s, idx.edges(), &cand);
}

Chord clip_ray(Point2 origin, double direction_deg, const OpenSpace& s) {
  if (!point_in_open_space(origin, s))
    throw OriginOutside("clip origin not in open space");
  const Point2 dir = detail::unit_from_degrees(direction_deg);
  return detail::clip_line(origin, dir, s, s.boundary(), nullptr);
}

}  // namespace axial
