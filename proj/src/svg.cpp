#include "axial/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace axial {

namespace {

std::string colour_for(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int rr = static_cast<int>(30 + t * 200);
  int gg = static_cast<int>(60 - t * 20);
  int bb = static_cast<int>(230 - t * 200);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rr, gg, bb);
  return buf;
}

void append_ring(std::ostringstream& out, const std::vector<Point2>& ring) {
  for (std::size_t i = 0; i < ring.size(); ++i)
    out << (i == 0 ? "M " : "L ") << ring[i].x << ' ' << ring[i].y << ' ';
  out << "Z ";
}

}  // namespace

std::string svg_document(const OpenSpace& s, const std::vector<Chord>& lines,
                         const std::vector<double>* values) {
  double margin = 0.05 * s.diameter();
  double w = (s.maxx() - s.minx()) + 2 * margin;
  double h = (s.maxy() - s.miny()) + 2 * margin;
  double stroke = 0.004 * s.diameter();

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" "
      << "viewBox=\"" << s.minx() - margin << ' ' << -(s.maxy() + margin)
      << ' ' << w << ' ' << h << "\">\n";
  // Flip y so the drawing matches the usual map orientation.
  out << "<g transform=\"scale(1,-1)\">\n";
  out << "<path fill=\"#e8e8e8\" stroke=\"#555555\" stroke-width=\"" << stroke
      << "\" fill-rule=\"evenodd\" d=\"";
  append_ring(out, s.outer);
  for (const auto& hole : s.holes) append_ring(out, hole);
  out << "\"/>\n";

  double lo = 0.0, hi = 1.0;
  if (values && !values->empty()) {
    lo = *std::min_element(values->begin(), values->end());
    hi = *std::max_element(values->begin(), values->end());
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string colour = "#c22222";
    if (values && i < values->size())
      colour = colour_for(hi > lo ? ((*values)[i] - lo) / (hi - lo) : 0.5);
    out << "<line x1=\"" << lines[i].a.x << "\" y1=\"" << lines[i].a.y
        << "\" x2=\"" << lines[i].b.x << "\" y2=\"" << lines[i].b.y
        << "\" stroke=\"" << colour << "\" stroke-width=\"" << 1.5 * stroke
        << "\" stroke-linecap=\"round\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace axial
