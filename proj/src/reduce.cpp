#include "axial/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "axial/errors.hpp"

namespace axial {

std::vector<Chord> map_chords(const AxialMap& m) {
  std::vector<Chord> out;
  out.reserve(m.lines.size());
  for (const auto& l : m.lines) out.push_back(l.ray.chord);
  return out;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Global:
      return "global";
    case Strategy::Local:
      return "local";
    default:
      return "recursive_local";
  }
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "global") return Strategy::Global;
  if (name == "local") return Strategy::Local;
  if (name == "recursive_local") return Strategy::RecursiveLocal;
  throw InvalidSpec("unknown strategy: " + name);
}

namespace {

int count_crossings(const Chord& c, const std::vector<Chord>& others,
                    double eps) {
  int n = 0;
  for (const auto& o : others) n += segment_intersection(c, o, eps).has_value();
  return n;
}

// Longest survivor; near-ties resolved by crossings with the chosen lines,
// then by lowest id. must_cross restricts the pool to rays intersecting it.
int pick_survivor(const std::vector<Ray>& rays, const std::vector<char>& alive,
                  const std::vector<Chord>& chosen, double eps,
                  const Chord* must_cross) {
  double longest = -1.0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (!alive[i]) continue;
    if (must_cross &&
        !segment_intersection(rays[i].chord, *must_cross, eps))
      continue;
    longest = std::max(longest, rays[i].length);
  }
  if (longest < 0.0) return -1;
  int best = -1, best_cross = -1;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (!alive[i] || rays[i].length < longest - eps) continue;
    if (must_cross &&
        !segment_intersection(rays[i].chord, *must_cross, eps))
      continue;
    int cr = count_crossings(rays[i].chord, chosen, eps);
    if (cr > best_cross) {
      best_cross = cr;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double merge_intervals(std::vector<std::pair<double, double>>& iv) {
  if (iv.empty()) return 0.0;
  std::sort(iv.begin(), iv.end());
  std::size_t k = 0;
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (iv[i].first > iv[k].second)
      iv[++k] = iv[i];
    else
      iv[k].second = std::max(iv[k].second, iv[i].second);
  }
  iv.resize(k + 1);
  double total = 0.0;
  for (const auto& [a, b] : iv) total += b - a;
  return total;
}

// Final cleanup sweep: a finished line whose chord the union of the other
// remaining buckets covers is redundant — everything it suppressed stays
// suppressed without it. Shortest lines are reconsidered first so a street's
// main axis outlives its mirrors; each drop folds the victim's provenance
// into the surviving line that covers most of it.
void prune_redundant(AxialMap& map, std::vector<Bucket>& buckets, double theta,
                     double eps) {
  bool changed = true;
  while (changed && map.lines.size() > 1) {
    changed = false;
    std::vector<std::size_t> order(map.lines.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      double la = map.lines[a].ray.length, lb = map.lines[b].ray.length;
      return la != lb ? la < lb : a > b;
    });
    for (std::size_t k : order) {
      const Chord& c = map.lines[k].ray.chord;
      std::vector<std::pair<double, double>> acc, iv;
      double best = -1.0;
      std::size_t heir = k;
      for (std::size_t j = 0; j < buckets.size(); ++j) {
        if (j == k) continue;
        chord_ring_intervals(c, buckets[j].ring, eps, iv);
        double single = 0.0;
        for (const auto& [a, b] : iv) single += b - a;
        if (single > best) {
          best = single;
          heir = j;
        }
        acc.insert(acc.end(), iv.begin(), iv.end());
      }
      if (heir == k || merge_intervals(acc) < theta) continue;
      auto& h = map.lines[heir];
      h.removed.push_back(map.lines[k].ray.id);
      h.removed.insert(h.removed.end(), map.lines[k].removed.begin(),
                       map.lines[k].removed.end());
      map.lines.erase(map.lines.begin() + static_cast<std::ptrdiff_t>(k));
      buckets.erase(buckets.begin() + static_cast<std::ptrdiff_t>(k));
      changed = true;
      break;
    }
  }
}

struct Reducer {
  const std::vector<Ray>& rays;
  const OpenSpace& s;
  const MedialGraph& g;
  const ReduceParams& p;
  std::vector<char> alive;
  std::vector<Chord> chosen;
  std::vector<Bucket> formed;
  // Per ray: chord sub-intervals already inside some selected line's bucket.
  // Buckets accumulate, so a ray dies once the union covers theta of it.
  std::vector<std::vector<std::pair<double, double>>> covered;
  AxialMap map;

  Reducer(const std::vector<Ray>& rays_, const OpenSpace& s_,
          const MedialGraph& g_, const ReduceParams& p_)
      : rays(rays_), s(s_), g(g_), p(p_), alive(rays_.size(), 1),
        covered(rays_.size()) {}

  void select(int id) {
    AxialLine line;
    line.ray = rays[id];
    Bucket b = form_bucket(rays[id], s, g);
    std::vector<std::pair<double, double>> iv;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (!alive[i]) continue;
      const Chord& c = rays[i].chord;
      double pad = s.eps() + 0.02 * c.length();
      if (std::min(c.a.x, c.b.x) > b.maxx + pad ||
          std::max(c.a.x, c.b.x) < b.minx - pad ||
          std::min(c.a.y, c.b.y) > b.maxy + pad ||
          std::max(c.a.y, c.b.y) < b.miny - pad)
        continue;
      chord_ring_intervals(c, b.ring, s.eps(), iv);
      if (iv.empty()) continue;
      auto& acc = covered[i];
      acc.insert(acc.end(), iv.begin(), iv.end());
      if (merge_intervals(acc) >= p.theta) {
        alive[i] = 0;
        line.removed.push_back(static_cast<int>(i));
      }
    }
    if (alive[id]) {  // always retire the chosen ray itself
      alive[id] = 0;
      line.removed.push_back(id);
    }
    chosen.push_back(rays[id].chord);
    formed.push_back(std::move(b));
    map.lines.push_back(std::move(line));
    if (map.lines.size() > p.max_lines)
      throw PipelineError("reduction exceeded the line cap");
  }

  AxialMap finish() {
    prune_redundant(map, formed, p.theta, s.eps());
    return std::move(map);
  }
};

}  // namespace

AxialMap reduce_global(const RaySet& rays, const OpenSpace& s,
                       const MedialGraph& g, const ReduceParams& p) {
  Reducer r(rays.rays, s, g, p);
  r.map.strategy = Strategy::Global;
  while (true) {
    int id = pick_survivor(r.rays, r.alive, r.chosen, s.eps(), nullptr);
    if (id < 0) break;
    r.select(id);
  }
  return r.finish();
}

AxialMap reduce_local(const RaySet& rays, const OpenSpace& s,
                      const MedialGraph& g, const ReduceParams& p) {
  Reducer r(rays.rays, s, g, p);
  r.map.strategy = Strategy::Local;
  while (true) {
    int start = pick_survivor(r.rays, r.alive, r.chosen, s.eps(), nullptr);
    if (start < 0) break;
    r.select(start);
    std::vector<int> stack{start};
    while (!stack.empty()) {
      Chord cur = r.rays[stack.back()].chord;
      int next = pick_survivor(r.rays, r.alive, r.chosen, s.eps(), &cur);
      if (next < 0) {
        stack.pop_back();
        continue;
      }
      r.select(next);
      stack.push_back(next);
    }
  }
  return r.finish();
}

namespace {

// Accumulated buckets suppress jointly: a chord is spent once their union
// covers theta of it, even when no single bucket does.
bool chord_in_any_bucket(const Chord& c, const std::vector<Bucket>& buckets,
                         double theta, double eps) {
  return chord_fraction_in_buckets(c, buckets, eps) >= theta;
}

}  // namespace

AxialMap generate_recursive(const OpenSpace& s, const MedialGraph& g,
                            const SpatialIndex& idx, const ReduceParams& p,
                            std::optional<Chord> seed, std::size_t* rays_seen) {
  double res = p.resolution > 0 ? p.resolution : min_clearance(s) / 3.0;
  double tol = 1e-7 * s.diameter();

  std::vector<Ray> collected;
  std::vector<Bucket> buckets;
  std::vector<Chord> chosen;
  std::size_t candidates_seen = 0;

  auto same_chord = [&](const Chord& a, const Chord& b) {
    return (distance(a.a, b.a) <= tol && distance(a.b, b.b) <= tol) ||
           (distance(a.a, b.b) <= tol && distance(a.b, b.a) <= tol);
  };

  auto ridge_at = [&](const Point2& pt) -> Chord {
    auto fan = ray_fan(pt, s, idx, p.angular_step);
    int pick = isovist_ridge(fan, chosen, p.eps_len, s.eps());
    return fan[pick];
  };

  Chord current;
  if (seed) {
    Point2 mid = seed->midpoint();
    if (!point_in_open_space(mid, s))
      throw SeedOutside("seed line midpoint not in open space");
    double len = seed->length();
    if (len <= s.eps()) throw SeedOutside("seed line has no direction");
    double deg = std::atan2(seed->b.y - seed->a.y, seed->b.x - seed->a.x) *
                 180.0 / 3.14159265358979323846;
    current = clip_ray(mid, deg, s, idx);
  } else {
    const auto& ring = s.ring(0);
    Point2 centroid{0, 0};
    for (const auto& v : ring) centroid = centroid + v;
    centroid = centroid * (1.0 / static_cast<double>(ring.size()));
    Point2 at = centroid;
    if (!point_in_open_space(at, s)) {
      auto pts = sample_open_points(s, 64);
      if (pts.empty()) throw DegenerateScene("no open interior found");
      at = pts[0];
      for (const auto& q : pts)
        if (distance(q, centroid) < distance(at, centroid)) at = q;
    }
    current = ridge_at(at);
    ++candidates_seen;
  }

  struct Frame {
    Chord chord;
  };
  std::vector<Frame> work{{current}};

  std::size_t steps = 0;
  while (!work.empty()) {
    Chord cur = work.back().chord;
    work.pop_back();
    if (chord_in_any_bucket(cur, buckets, p.theta, s.eps())) continue;
    if (++steps > p.max_lines)
      throw PipelineError("recursive generation exceeded the line cap");

    // The current ray's bucket is formed before its station scan; candidates
    // already covered by it (or by accumulated buckets) are spent, which in
    // particular retires the current ray's own parallel family and lets
    // cross-street chords surface at crossing stations.
    int id = static_cast<int>(collected.size());
    Ray probe{cur, cur.midpoint(), cur.length(), id};
    Bucket bcur = form_bucket(probe, s, g);
    buckets.push_back(bcur);

    double len = cur.length();
    Point2 u = (cur.b - cur.a) * (1.0 / std::max(len, 1e-300));
    std::vector<Point2> stations;
    if (len <= res)
      stations.push_back(cur.midpoint());
    else
      for (double t = res / 2; t < len; t += res)
        stations.push_back(cur.a + u * t);

    std::vector<Chord> ridges, pool;
    for (const auto& pt : stations) {
      if (!point_in_open_space(pt, s)) continue;  // numeric edge grazing
      auto fan = ray_fan(pt, s, idx, p.angular_step);
      pool.clear();
      for (const auto& c : fan)
        if (!chord_in_any_bucket(c, buckets, p.theta, s.eps()))
          pool.push_back(c);
      if (pool.empty()) continue;
      Chord ridge = pool[isovist_ridge(pool, chosen, p.eps_len, s.eps())];
      bool dup = false;
      for (const auto& r : ridges)
        dup = dup || same_chord(ridge, r);
      if (!dup) {
        ridges.push_back(ridge);
        ++candidates_seen;
      }
    }

    // Hill-climb: a station ridge longer than the current ray takes over as
    // the current ray; the line joins the map only at a local maximum, where
    // nothing seen from it is longer.
    const Chord* best = nullptr;
    for (const auto& r : ridges)
      if (!best || r.length() > best->length()) best = &r;
    if (best && best->length() > cur.length()) {
      buckets.pop_back();
      work.push_back({*best});
      continue;
    }

    collected.push_back(probe);
    chosen.push_back(cur);

    std::vector<Chord> survivors;
    for (const auto& r : ridges)
      if (!chord_in_any_bucket(r, buckets, p.theta, s.eps()))
        survivors.push_back(r);
    std::sort(survivors.begin(), survivors.end(),
              [](const Chord& a, const Chord& b) {
                return a.length() > b.length();
              });
    // Depth-first: longest survivor is processed next.
    for (auto it = survivors.rbegin(); it != survivors.rend(); ++it)
      work.push_back({*it});
  }

  if (rays_seen) *rays_seen = candidates_seen;

  RaySet pool;
  pool.rays = collected;
  AxialMap out = reduce_global(pool, s, g, p);
  out.strategy = Strategy::RecursiveLocal;
  return out;
}

std::vector<Point2> sample_open_points(const OpenSpace& s, std::size_t n,
                                       std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto u = [&]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<Point2> out;
  out.reserve(n);
  std::size_t attempts = 0, cap = 1000 * std::max<std::size_t>(n, 1);
  while (out.size() < n && attempts++ < cap) {
    Point2 p{s.minx() + u() * (s.maxx() - s.minx()),
             s.miny() + u() * (s.maxy() - s.miny())};
    if (point_in_open_space(p, s)) out.push_back(p);
  }
  return out;
}

bool sees_chord(const Point2& p, const Chord& c, const OpenSpace& s,
                const SpatialIndex& idx) {
  double eps = s.eps();
  std::vector<std::uint32_t> candidates;
  const auto& edges = idx.edges();
  for (int k = 0; k < 32; ++k) {
    double t = (k + 0.5) / 32.0;
    Point2 q = c.a + (c.b - c.a) * t;
    Chord sight{p, q};
    double d = distance(p, q);
    if (d <= eps) return true;
    Point2 dir = (q - p) * (1.0 / d);
    idx.line_candidates(p, dir, candidates);
    bool blocked = false;
    for (std::uint32_t id : candidates) {
      auto hit = segment_intersection(sight, {edges[id].a, edges[id].b}, eps);
      if (hit && distance(*hit, p) > 2 * eps && distance(*hit, q) > 2 * eps) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return true;
  }
  return false;
}

double surveillance_fraction(const std::vector<Chord>& lines,
                             const OpenSpace& s, const SpatialIndex& idx,
                             std::size_t n, std::uint64_t seed) {
  auto pts = sample_open_points(s, n, seed);
  if (pts.empty()) return 0.0;
  std::size_t seen = 0;
  for (const auto& p : pts)
    for (const auto& c : lines)
      if (sees_chord(p, c, s, idx)) {
        ++seen;
        break;
      }
  return static_cast<double>(seen) / static_cast<double>(pts.size());
}

std::vector<Point2> detect_concave_gaps(const AxialMap& m, const OpenSpace& s,
                                        const SpatialIndex& idx, std::size_t n,
                                        std::uint64_t seed) {
  auto lines = map_chords(m);
  std::vector<Point2> gaps;
  for (const auto& p : sample_open_points(s, n, seed)) {
    bool seen = false;
    for (const auto& c : lines)
      if (sees_chord(p, c, s, idx)) {
        seen = true;
        break;
      }
    if (!seen) gaps.push_back(p);
  }
  return gaps;
}

}  // namespace axial
