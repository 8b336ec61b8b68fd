#include "axial/grids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace axial {

namespace {
int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }
}  // namespace

PointGrid::PointGrid(const std::vector<Point2>& pts) : pts_(pts) {
  if (pts_.empty()) return;
  double maxx = pts_[0].x, maxy = pts_[0].y;
  minx_ = pts_[0].x;
  miny_ = pts_[0].y;
  for (const auto& p : pts_) {
    minx_ = std::min(minx_, p.x);
    miny_ = std::min(miny_, p.y);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  }
  int n = clampi(static_cast<int>(std::ceil(std::sqrt(static_cast<double>(pts_.size())))), 1, 512);
  double ext = std::max({maxx - minx_, maxy - miny_, 1e-12});
  cell_ = ext / n;
  nx_ = clampi(static_cast<int>((maxx - minx_) / cell_) + 1, 1, 4096);
  ny_ = clampi(static_cast<int>((maxy - miny_) / cell_) + 1, 1, 4096);
  cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  for (std::size_t k = 0; k < pts_.size(); ++k)
    cells_[cell_of(pts_[k].x, pts_[k].y)].push_back(static_cast<int>(k));
}

int PointGrid::cell_of(double x, double y) const {
  int i = clampi(static_cast<int>(std::floor((x - minx_) / cell_)), 0, nx_ - 1);
  int j = clampi(static_cast<int>(std::floor((y - miny_) / cell_)), 0, ny_ - 1);
  return j * nx_ + i;
}

int PointGrid::nearest(const Point2& p) const {
  if (pts_.empty()) return -1;
  int ci = clampi(static_cast<int>(std::floor((p.x - minx_) / cell_)), 0, nx_ - 1);
  int cj = clampi(static_cast<int>(std::floor((p.y - miny_) / cell_)), 0, ny_ - 1);
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  int max_r = std::max(nx_, ny_);
  for (int r = 0; r <= max_r; ++r) {
    if (best >= 0 && static_cast<double>(r - 1) * cell_ > std::sqrt(best_d2)) break;
    for (int j = cj - r; j <= cj + r; ++j) {
      if (j < 0 || j >= ny_) continue;
      for (int i = ci - r; i <= ci + r; ++i) {
        if (i < 0 || i >= nx_) continue;
        if (std::max(std::abs(i - ci), std::abs(j - cj)) != r) continue;
        for (int k : cells_[static_cast<std::size_t>(j) * nx_ + i]) {
          double dx = pts_[k].x - p.x, dy = pts_[k].y - p.y;
          double d2 = dx * dx + dy * dy;
          if (d2 < best_d2 || (d2 == best_d2 && k < best)) {
            best_d2 = d2;
            best = k;
          }
        }
      }
    }
  }
  return best;
}

ChordGrid::ChordGrid(double minx, double miny, double maxx, double maxy,
                     std::size_t expected) {
  double ext_x = std::max(maxx - minx, 1e-9);
  double ext_y = std::max(maxy - miny, 1e-9);
  double target = std::sqrt(std::max<double>(4.0 * expected, 64.0));
  cell_ = std::max(ext_x, ext_y) / std::min(target, 1024.0);
  // Irrational-ish origin shift keeps axis-aligned input off cell boundaries.
  minx_ = minx - 0.2337 * cell_;
  miny_ = miny - 0.1713 * cell_;
  nx_ = clampi(static_cast<int>((maxx - minx_) / cell_) + 2, 1, 2048);
  ny_ = clampi(static_cast<int>((maxy - miny_) / cell_) + 2, 1, 2048);
  cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
}

template <class F>
void ChordGrid::walk(const Chord& c, F&& visit) const {
  double x0 = (c.a.x - minx_) / cell_, y0 = (c.a.y - miny_) / cell_;
  double x1 = (c.b.x - minx_) / cell_, y1 = (c.b.y - miny_) / cell_;
  int i = clampi(static_cast<int>(std::floor(x0)), 0, nx_ - 1);
  int j = clampi(static_cast<int>(std::floor(y0)), 0, ny_ - 1);
  int ie = clampi(static_cast<int>(std::floor(x1)), 0, nx_ - 1);
  int je = clampi(static_cast<int>(std::floor(y1)), 0, ny_ - 1);
  auto emit = [&](int a, int b) {
    if (a >= 0 && a < nx_ && b >= 0 && b < ny_) visit(a, b);
  };
  emit(i, j);
  double dx = x1 - x0, dy = y1 - y0;
  int si = dx > 0 ? 1 : -1, sj = dy > 0 ? 1 : -1;
  double inv_dx = dx != 0 ? std::abs(1.0 / dx) : 0.0;
  double inv_dy = dy != 0 ? std::abs(1.0 / dy) : 0.0;
  double tx = dx != 0 ? (si > 0 ? (i + 1 - x0) : (x0 - i)) * inv_dx
                      : std::numeric_limits<double>::infinity();
  double ty = dy != 0 ? (sj > 0 ? (j + 1 - y0) : (y0 - j)) * inv_dy
                      : std::numeric_limits<double>::infinity();
  int guard = nx_ + ny_ + 8;
  while ((i != ie || j != je) && guard-- > 0) {
    if (std::abs(tx - ty) < 1e-12) {
      emit(i + si, j);
      emit(i, j + sj);
      i += si;
      j += sj;
      tx += inv_dx;
      ty += inv_dy;
    } else if (tx < ty) {
      i += si;
      tx += inv_dx;
    } else {
      j += sj;
      ty += inv_dy;
    }
    emit(i, j);
  }
}

void ChordGrid::insert(int id, const Chord& c) {
  walk(c, [&](int i, int j) {
    cells_[static_cast<std::size_t>(j) * nx_ + i].push_back(id);
  });
}

void ChordGrid::segment_candidates(const Chord& c, std::vector<int>& out) const {
  out.clear();
  walk(c, [&](int i, int j) {
    const auto& v = cells_[static_cast<std::size_t>(j) * nx_ + i];
    out.insert(out.end(), v.begin(), v.end());
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace axial
