#include "axial/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "axial/errors.hpp"

namespace axial {

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  // Uniform in [0,1). Manual scaling so results are identical across
  // standard library implementations.
  double u() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double u(double lo, double hi) { return lo + (hi - lo) * u(); }
  int pick(int n) {
    return std::min(n - 1, static_cast<int>(u() * static_cast<double>(n)));
  }
};

std::vector<Point2> rect_ring(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

}  // namespace

OpenSpace rectangle_scene(double w, double h) {
  if (!(w > 0.0) || !(h > 0.0)) throw InvalidSpec("rectangle sides must be positive");
  return make_open_space(rect_ring(0, 0, w, h), {}, "rect");
}

OpenSpace t_scene(double arm, double width) {
  if (!(arm > 0.0) || !(width > 0.0)) throw InvalidSpec("t sides must be positive");
  double a = arm, w = width;
  std::vector<Point2> ring = {
      {0, a},         {a, a},         {a, 0},     {a + w, 0},
      {a + w, a},     {2 * a + w, a}, {2 * a + w, a + w}, {0, a + w}};
  return make_open_space(ring, {}, "t");
}

OpenSpace grid_scene(int rows, int cols, double block, double street) {
  if (rows < 1 || cols < 1) throw InvalidSpec("grid needs rows,cols >= 1");
  if (!(block > 0.0) || !(street > 0.0)) throw InvalidSpec("grid sizes must be positive");
  double pitch = block + street;
  double w = cols * pitch, h = rows * pitch;
  std::vector<std::vector<Point2>> holes;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double x = street / 2 + j * pitch;
      double y = street / 2 + i * pitch;
      holes.push_back(rect_ring(x, y, x + block, y + block));
    }
  return make_open_space(rect_ring(0, 0, w, h), std::move(holes), "grid");
}

OpenSpace city_scene(int blocks, std::uint64_t seed) {
  if (blocks < 1) throw InvalidSpec("city needs at least one block");
  Rng rng(seed);

  // More cells than blocks: the surplus is absorbed by merges, and every
  // merged block interrupts the street between its halves. That is what
  // breaks long sight lines into an uneven mix of lengths.
  double target = 2.0 * static_cast<double>(blocks);
  int cols = static_cast<int>(std::ceil(std::sqrt(target)));
  int rows = static_cast<int>(std::ceil(target / cols));
  int cells = rows * cols;

  double margin = rng.u(4.0, 5.5);
  std::vector<double> w(cols), h(rows), sx, sy;
  for (int j = 0; j < cols; ++j) w[j] = rng.u(10.0, 16.0);
  for (int i = 0; i < rows; ++i) h[i] = rng.u(10.0, 16.0);
  for (int j = 0; j + 1 < cols; ++j) sx.push_back(rng.u(3.2, 4.6));
  for (int i = 0; i + 1 < rows; ++i) sy.push_back(rng.u(3.2, 4.6));

  // One avenue each way stays clear of merges so the map keeps a pair of
  // full-length lines.
  int ah = rows > 1 ? rng.pick(rows - 1) : -1;
  int av = cols > 1 ? rng.pick(cols - 1) : -1;

  std::vector<double> cx(cols + 1), cy(rows + 1);
  cx[0] = margin;
  for (int j = 0; j < cols; ++j) cx[j + 1] = cx[j] + w[j] + (j + 1 < cols ? sx[j] : 0.0);
  cy[0] = margin;
  for (int i = 0; i < rows; ++i) cy[i + 1] = cy[i] + h[i] + (i + 1 < rows ? sy[i] : 0.0);
  double width = cx[cols] + margin;
  double height = cy[rows] + margin;

  auto cell = [cols](int i, int j) { return i * cols + j; };
  std::vector<int> owner(cells);
  for (int c = 0; c < cells; ++c) owner[c] = c;
  std::vector<std::pair<int, int>> merges;  // (root cell, absorbed cell)

  // Merge neighbour pairs across a street; each merged block interrupts the
  // street between its halves. Only untouched singles pair up, so every block
  // stays rectangular. Repeat passes until the surplus of cells over blocks
  // is soaked up or nothing more pairs.
  auto root_count = [&]() {
    int n = 0;
    for (int c = 0; c < cells; ++c) n += owner[c] == c;
    return n;
  };
  std::vector<bool> paired(cells, false);
  for (int pass = 0; pass < 4 && root_count() > blocks; ++pass)
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        int c = cell(i, j);
        double t = rng.u();
        if (paired[c] || owner[c] != c) continue;
        if (t < 0.42 && i + 1 < rows && i != ah) {
          int nb = cell(i + 1, j);
          if (!paired[nb] && owner[nb] == nb) {
            owner[nb] = c;
            paired[c] = paired[nb] = true;
            merges.push_back({c, nb});
          }
        } else if (t < 0.78 && j + 1 < cols && j != av) {
          int nb = cell(i, j + 1);
          if (!paired[nb] && owner[nb] == nb) {
            owner[nb] = c;
            paired[c] = paired[nb] = true;
            merges.push_back({c, nb});
          }
        }
      }

  // Exact block count: undo merges if too few roots, carve plazas if too many.
  while (root_count() < blocks && !merges.empty()) {
    owner[merges.back().second] = merges.back().second;
    merges.pop_back();
  }
  std::vector<bool> plaza(cells, false);
  int extra = root_count() - blocks;
  while (extra > 0) {
    std::vector<int> singles, roots;
    for (int c = 0; c < cells; ++c) {
      if (owner[c] != c || plaza[c]) continue;
      bool merged = false;
      for (int d = 0; d < cells; ++d) merged |= (d != c && owner[d] == c);
      (merged ? roots : singles).push_back(c);
    }
    auto& pool = singles.empty() ? roots : singles;
    int victim = pool[rng.pick(static_cast<int>(pool.size()))];
    plaza[victim] = true;
    for (int d = 0; d < cells; ++d)
      if (owner[d] == victim) plaza[d] = true;
    --extra;
  }

  std::vector<std::vector<Point2>> holes;
  for (int c = 0; c < cells; ++c) {
    if (owner[c] != c || plaza[c]) continue;
    int i0 = c / cols, j0 = c % cols, i1 = i0, j1 = j0;
    for (int d = 0; d < cells; ++d)
      if (owner[d] == c) {
        i1 = std::max(i1, d / cols);
        j1 = std::max(j1, d % cols);
      }
    double x0 = cx[j0], x1 = cx[j1] + w[j1];
    double y0 = cy[i0], y1 = cy[i1] + h[i1];

    double il = rng.u(0.15, 0.7), ir = rng.u(0.15, 0.7);
    double ib = rng.u(0.15, 0.7), it = rng.u(0.15, 0.7);
    // Blocks lean into adjacent streets from either side. Depth stays under
    // half the free gap so facing blocks never meet; misaligned doors on
    // opposite sides are what chop a street's sight line.
    double gap_n = (i1 + 1 < rows) ? sy[i1] : margin;
    double gap_e = (j1 + 1 < cols) ? sx[j1] : margin;
    double gap_s = (i0 > 0) ? sy[i0 - 1] : margin;
    double gap_w = (j0 > 0) ? sx[j0 - 1] : margin;
    bool push_n = rng.u() < 0.62 && i1 + 1 < rows && i1 != ah;
    double dn = rng.u(0.25, 0.48) * (gap_n - 1.2);
    bool push_e = rng.u() < 0.62 && j1 + 1 < cols && j1 != av;
    double de = rng.u(0.25, 0.48) * (gap_e - 1.2);
    bool push_s = rng.u() < 0.62 && i0 > 0 && i0 - 1 != ah;
    double ds = rng.u(0.25, 0.48) * (gap_s - 1.2);
    bool push_w = rng.u() < 0.62 && j0 > 0 && j0 - 1 != av;
    double dw = rng.u(0.25, 0.48) * (gap_w - 1.2);
    y0 = push_s ? y0 - ds : y0 + ib;
    x0 = push_w ? x0 - dw : x0 + il;
    y1 = push_n ? y1 + dn : y1 - it;
    x1 = push_e ? x1 + de : x1 - ir;

    holes.push_back(rect_ring(x0, y0, x1, y1));
  }

  return make_open_space(rect_ring(0, 0, width, height), std::move(holes),
                         "city-" + std::to_string(blocks) + "-" + std::to_string(seed));
}

OpenSpace pocket_scene() {
  // The hole leaves clearance 130 to every outer wall, so boundary sampling
  // runs at step ~43. Every facing pair of cavity walls is closer than
  // 1.8 steps along the boundary, so the cavity contributes no skeleton and
  // therefore no ray reaches behind the bend.
  std::vector<Point2> hole = {
      {130, 130}, {170, 130}, {170, 149}, {150, 149}, {150, 138},
      {147, 138}, {147, 152}, {170, 152}, {170, 160}, {130, 160}};
  return make_open_space(rect_ring(0, 0, 300, 290), {hole}, "pocket");
}

OpenSpace scene_from_spec(const std::string& spec) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
      auto next = s.find(sep, pos);
      out.push_back(s.substr(pos, next - pos));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return out;
  };
  auto bad = [&spec]() { return InvalidSpec("unrecognised scene spec: " + spec); };
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw bad();
      return v;
    } catch (const InvalidSpec&) {
      throw;
    } catch (const std::exception&) {
      throw bad();
    }
  };

  auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "pocket") {
    if (parts.size() != 1) throw bad();
    return pocket_scene();
  }
  if (kind == "rect" || kind == "t") {
    if (parts.size() != 2) throw bad();
    auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw bad();
    double a = num(dims[0]), b = num(dims[1]);
    return kind == "rect" ? rectangle_scene(a, b) : t_scene(a, b);
  }
  if (kind == "grid") {
    if (parts.size() != 2 && parts.size() != 3) throw bad();
    auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw bad();
    int rows = static_cast<int>(num(dims[0]));
    int cols = static_cast<int>(num(dims[1]));
    double block = 8.0, street = 4.0;
    if (parts.size() == 3) {
      auto bs = split(parts[2], ',');
      if (bs.size() != 2) throw bad();
      block = num(bs[0]);
      street = num(bs[1]);
    }
    return grid_scene(rows, cols, block, street);
  }
  if (kind == "city") {
    if (parts.size() != 2 && parts.size() != 3) throw bad();
    int n = static_cast<int>(num(parts[1]));
    std::uint64_t seed = 1;
    if (parts.size() == 3) seed = static_cast<std::uint64_t>(num(parts[2]));
    return city_scene(n, seed);
  }
  throw bad();
}

}  // namespace axial
