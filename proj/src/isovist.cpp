#include "axial/isovist.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "axial/errors.hpp"

namespace axial {

std::vector<Chord> ray_fan(const Point2& p, const OpenSpace& s,
                           const SpatialIndex& idx, double angular_step) {
  if (!(angular_step > 0.0)) throw InvalidSpec("angular step must be positive");
  double m_real = 180.0 / angular_step;
  int m = static_cast<int>(std::lround(m_real));
  if (m < 1 || std::abs(m_real - m) > 1e-9)
    throw InvalidSpec("angular step must divide 180");
  if (!point_in_open_space(p, s))
    throw OriginOutside("fan origin not in open space");
  std::vector<Chord> fan;
  fan.reserve(m);
  std::vector<std::uint32_t> candidates;
  for (int k = 0; k < m; ++k) {
    Point2 dir = detail::unit_from_degrees(k * angular_step);
    idx.line_candidates(p, dir, candidates);
    fan.push_back(detail::clip_line(p, dir, s, idx.edges(), &candidates));
  }
  return fan;
}

namespace {

int count_crossings(const Chord& c, const std::vector<Chord>& context,
                    double eps, const ChordGrid* grid,
                    std::vector<int>& scratch) {
  int n = 0;
  if (grid && !grid->empty()) {
    grid->segment_candidates(c, scratch);
    for (int id : scratch)
      n += segment_intersection(c, context[id], eps).has_value();
  } else {
    for (const auto& other : context)
      n += segment_intersection(c, other, eps).has_value();
  }
  return n;
}

}  // namespace

int isovist_ridge(const std::vector<Chord>& fan,
                  const std::vector<Chord>& context, double eps_len,
                  double eps, const ChordGrid* grid) {
  if (fan.empty()) throw EmptyInput("empty fan");
  double longest = 0.0;
  for (const auto& c : fan) longest = std::max(longest, c.length());
  double cut = (1.0 - eps_len) * longest;
  int best = -1, best_cross = -1;
  std::vector<int> scratch;
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (fan[i].length() < cut) continue;
    int cross = count_crossings(fan[i], context, eps, grid, scratch);
    if (cross > best_cross) {
      best_cross = cross;
      best = static_cast<int>(i);
    }
  }
  return best;
}

RaySet build_ray_set(const MedialGraph& g, const OpenSpace& s,
                     const SpatialIndex& idx, double angular_step,
                     double eps_len, int threads) {
  RaySet out;
  std::size_t nv = g.vertices.size();
  if (nv == 0) return out;
  if (threads < 1) threads = 1;

  ChordGrid context_grid(s.minx(), s.miny(), s.maxx(), s.maxy(), nv);
  std::vector<Chord> context;
  double tol = 1e-7 * s.diameter();
  std::vector<int> scratch;

  auto same_chord = [&](const Chord& a, const Chord& b) {
    return (distance(a.a, b.a) <= tol && distance(a.b, b.b) <= tol) ||
           (distance(a.a, b.b) <= tol && distance(a.b, b.a) <= tol);
  };

  const std::size_t window = 256;
  std::vector<std::vector<Chord>> fans(std::min(window, nv));
  for (std::size_t base = 0; base < nv; base += window) {
    std::size_t count = std::min(window, nv - base);
    if (threads > 1) {
      std::vector<std::thread> pool;
      std::size_t per = (count + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        std::size_t lo = t * per, hi = std::min(count, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
          for (std::size_t k = lo; k < hi; ++k)
            fans[k] = ray_fan(g.vertices[base + k].position, s, idx, angular_step);
        });
      }
      for (auto& th : pool) th.join();
    } else {
      for (std::size_t k = 0; k < count; ++k)
        fans[k] = ray_fan(g.vertices[base + k].position, s, idx, angular_step);
    }
    for (std::size_t k = 0; k < count; ++k) {
      int pick = isovist_ridge(fans[k], context, eps_len, s.eps(), &context_grid);
      if (pick < 0) continue;
      const Chord& c = fans[k][pick];
      context_grid.segment_candidates(c, scratch);
      bool dup = false;
      for (int id : scratch)
        if (same_chord(c, context[id])) {
          dup = true;
          break;
        }
      if (dup) continue;
      int id = static_cast<int>(out.rays.size());
      out.rays.push_back({c, g.vertices[base + k].position, c.length(), id});
      context_grid.insert(id, c);
      context.push_back(c);
    }
  }
  return out;
}

}  // namespace axial
