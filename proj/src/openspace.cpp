#include "axial/openspace.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "axial/errors.hpp"

namespace axial {

namespace {

void strip_duplicates(std::vector<Point2>& ring, double eps) {
  if (ring.size() >= 2 && distance(ring.front(), ring.back()) <= eps)
    ring.pop_back();  // explicit closing point
  std::vector<Point2> out;
  out.reserve(ring.size());
  for (const Point2& p : ring)
    if (out.empty() || distance(out.back(), p) > eps) out.push_back(p);
  ring.swap(out);
}

void check_simple(const std::vector<Point2>& ring, int feature, double eps) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Chord ei{ring[i], ring[(i + 1) % n]};
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent around the wrap
      const Chord ej{ring[j], ring[(j + 1) % n]};
      if (segment_intersection(ei, ej, eps))
        throw ValidationError("not_simple", feature,
                              "edges " + std::to_string(i) + " and " +
                                  std::to_string(j) + " intersect");
    }
  }
}

bool rings_intersect(const std::vector<Point2>& r1,
                     const std::vector<Point2>& r2, double eps) {
  const std::size_t n1 = r1.size(), n2 = r2.size();
  for (std::size_t i = 0; i < n1; ++i) {
    const Chord e1{r1[i], r1[(i + 1) % n1]};
    for (std::size_t j = 0; j < n2; ++j) {
      const Chord e2{r2[j], r2[(j + 1) % n2]};
      if (segment_intersection(e1, e2, eps)) return true;
    }
  }
  return false;
}

double ring_pair_distance(const std::vector<Point2>& r1,
                          const std::vector<Point2>& r2) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n1 = r1.size(), n2 = r2.size();
  for (std::size_t i = 0; i < n1; ++i) {
    const Chord e1{r1[i], r1[(i + 1) % n1]};
    for (std::size_t j = 0; j < n2; ++j)
      d = std::min(d, segment_segment_distance(
                          e1, Chord{r2[j], r2[(j + 1) % n2]}));
  }
  return d;
}

}  // namespace

OpenSpace make_open_space(std::vector<Point2> outer,
                          std::vector<std::vector<Point2>> holes,
                          std::string name) {
  OpenSpace s;
  s.name = std::move(name);

  if (outer.size() < 3)
    throw ValidationError("ring_too_small", 0, "outer ring needs 3+ points");
  double minx = outer[0].x, maxx = outer[0].x;
  double miny = outer[0].y, maxy = outer[0].y;
  for (const Point2& p : outer) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError("not_finite", 0, "non-finite coordinate");
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double diam = std::hypot(maxx - minx, maxy - miny);
  if (diam <= 0.0)
    throw ValidationError("ring_too_small", 0, "outer ring has zero extent");
  const double eps = 1e-9 * diam;

  strip_duplicates(outer, eps);
  if (outer.size() < 3)
    throw ValidationError("ring_too_small", 0, "outer ring needs 3+ points");
  for (std::size_t h = 0; h < holes.size(); ++h) {
    for (const Point2& p : holes[h])
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw ValidationError("not_finite", int(h) + 1,
                              "non-finite coordinate");
    strip_duplicates(holes[h], eps);
    if (holes[h].size() < 3)
      throw ValidationError("ring_too_small", int(h) + 1,
                            "hole ring needs 3+ points");
  }

  check_simple(outer, 0, eps);
  for (std::size_t h = 0; h < holes.size(); ++h)
    check_simple(holes[h], int(h) + 1, eps);

  // Normalize winding: outer CCW, holes CW.
  double a0 = ring_signed_area(outer);
  if (std::abs(a0) <= eps * eps)
    throw ValidationError("ring_too_small", 0, "outer ring has zero area");
  if (a0 < 0) std::reverse(outer.begin(), outer.end());
  for (std::size_t h = 0; h < holes.size(); ++h) {
    double ah = ring_signed_area(holes[h]);
    if (std::abs(ah) <= eps * eps)
      throw ValidationError("ring_too_small", int(h) + 1,
                            "hole ring has zero area");
    if (ah > 0) std::reverse(holes[h].begin(), holes[h].end());
  }

  for (std::size_t h = 0; h < holes.size(); ++h) {
    const int f = int(h) + 1;
    if (rings_intersect(holes[h], outer, eps))
      throw ValidationError("hole_outside", f, "hole crosses the boundary");
    for (const Point2& p : holes[h])
      if (!point_in_ring(p, outer))
        throw ValidationError("hole_outside", f, "hole not inside boundary");
    if (ring_pair_distance(holes[h], outer) <= eps)
      throw ValidationError("hole_outside", f, "hole touches the boundary");
  }
  for (std::size_t h1 = 0; h1 < holes.size(); ++h1) {
    for (std::size_t h2 = h1 + 1; h2 < holes.size(); ++h2) {
      const int f = int(h2) + 1;
      if (rings_intersect(holes[h1], holes[h2], eps) ||
          point_in_ring(holes[h1][0], holes[h2]) ||
          point_in_ring(holes[h2][0], holes[h1]) ||
          ring_pair_distance(holes[h1], holes[h2]) <= eps)
        throw ValidationError("holes_overlap", f,
                              "holes " + std::to_string(h1 + 1) + " and " +
                                  std::to_string(h2 + 1) + " overlap/touch");
    }
  }

  s.outer = std::move(outer);
  s.holes = std::move(holes);
  s.minx_ = minx;
  s.maxx_ = maxx;
  s.miny_ = miny;
  s.maxy_ = maxy;
  s.diameter_ = diam;
  s.eps_ = eps;

  for (int f = 0; f < s.feature_count(); ++f) {
    const auto& r = s.ring(f);
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i)
      s.boundary_.push_back({r[i], r[(i + 1) % n], f});
  }
  return s;
}

bool connectivity_check(const OpenSpace& s, std::size_t max_cells) {
  double cell = min_clearance(s) / 3.0;
  const double w = s.maxx() - s.minx();
  const double h = s.maxy() - s.miny();
  auto cells_at = [&](double c) {
    return std::size_t(std::ceil(w / c)) * std::size_t(std::ceil(h / c));
  };
  while (cells_at(cell) > max_cells) cell *= 2.0;

  const int nx = std::max(1, int(std::ceil(w / cell)));
  const int ny = std::max(1, int(std::ceil(h / cell)));
  std::vector<char> open(std::size_t(nx) * ny, 0);
  std::size_t total = 0;
  int sx = -1, sy = -1;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Point2 c{s.minx() + (ix + 0.5) * cell, s.miny() + (iy + 0.5) * cell};
      if (point_in_open_space(c, s)) {
        open[std::size_t(iy) * nx + ix] = 1;
        ++total;
        if (sx < 0) {
          sx = ix;
          sy = iy;
        }
      }
    }
  }
  if (total == 0) return false;

  std::deque<std::pair<int, int>> queue{{sx, sy}};
  std::vector<char> seen(open.size(), 0);
  seen[std::size_t(sy) * nx + sx] = 1;
  std::size_t reached = 0;
  while (!queue.empty()) {
    auto [ix, iy] = queue.front();
    queue.pop_front();
    ++reached;
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int jx = ix + dx[k], jy = iy + dy[k];
      if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
      const std::size_t idx = std::size_t(jy) * nx + jx;
      if (open[idx] && !seen[idx]) {
        seen[idx] = 1;
        queue.emplace_back(jx, jy);
      }
    }
  }
  return double(reached) >= 0.999 * double(total);
}

}  // namespace axial
