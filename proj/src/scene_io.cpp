#include "axial/io.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "axial/errors.hpp"

namespace axial {

namespace {

using nlohmann::json;

std::vector<Point2> ring_from_coords(const json& arr) {
  std::vector<Point2> ring;
  if (!arr.is_array()) throw ParseError("ring is not an array");
  for (const auto& pt : arr) {
    if (!pt.is_array() || pt.size() < 2 || !pt[0].is_number() || !pt[1].is_number())
      throw ParseError("ring point is not [x, y]");
    ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
  }
  return ring;
}

OpenSpace space_from_polygon(const json& coords, const std::string& name) {
  if (!coords.is_array() || coords.empty())
    throw ParseError("polygon has no rings");
  std::vector<Point2> outer = ring_from_coords(coords[0]);
  std::vector<std::vector<Point2>> holes;
  for (std::size_t i = 1; i < coords.size(); ++i)
    holes.push_back(ring_from_coords(coords[i]));
  return make_open_space(std::move(outer), std::move(holes), name);
}

OpenSpace space_from_geojson(const json& j, std::string name) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("geojson object has no type");
  std::string type = j["type"].get<std::string>();
  if (type == "Polygon") return space_from_polygon(j.at("coordinates"), name);
  if (type == "MultiPolygon") {
    const auto& coords = j.at("coordinates");
    if (!coords.is_array() || coords.size() != 1)
      throw ParseError("only single-polygon MultiPolygon input is supported");
    return space_from_polygon(coords[0], name);
  }
  if (type == "Feature") {
    if (j.contains("properties") && j["properties"].is_object() &&
        j["properties"].contains("name") && j["properties"]["name"].is_string())
      name = j["properties"]["name"].get<std::string>();
    if (!j.contains("geometry")) throw ParseError("feature has no geometry");
    return space_from_geojson(j["geometry"], name);
  }
  if (type == "FeatureCollection") {
    const auto& feats = j.at("features");
    if (!feats.is_array() || feats.size() != 1)
      throw ParseError("expected exactly one feature");
    return space_from_geojson(feats[0], name);
  }
  throw ParseError("unsupported geojson type: " + type);
}

OpenSpace space_from_wkt(const std::string& text) {
  std::size_t pos = text.find("POLYGON");
  if (pos == std::string::npos) throw ParseError("expected a POLYGON");
  pos += 7;
  std::vector<std::vector<Point2>> rings;
  int depth = 0;
  std::vector<Point2> cur;
  std::string num;
  std::vector<double> pair;
  auto flush_number = [&]() {
    if (num.empty()) return;
    try {
      pair.push_back(std::stod(num));
    } catch (const std::exception&) {
      throw ParseError("bad coordinate: " + num);
    }
    num.clear();
    if (pair.size() == 2) {
      cur.push_back({pair[0], pair[1]});
      pair.clear();
    } else if (pair.size() > 2) {
      throw ParseError("coordinate with more than two components");
    }
  };
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch == '(') {
      ++depth;
      if (depth == 2) cur.clear();
    } else if (ch == ')') {
      flush_number();
      if (depth == 2) {
        if (!pair.empty()) throw ParseError("dangling coordinate");
        rings.push_back(cur);
      }
      --depth;
      if (depth == 0) break;
    } else if (ch == ',') {
      flush_number();
      if (depth == 2 && !pair.empty()) throw ParseError("odd coordinate count");
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      flush_number();
    } else {
      num += ch;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses");
  if (rings.empty()) throw ParseError("polygon has no rings");
  std::vector<Point2> outer = rings[0];
  std::vector<std::vector<Point2>> holes(rings.begin() + 1, rings.end());
  return make_open_space(std::move(outer), std::move(holes), "scene");
}

json ring_to_coords(const std::vector<Point2>& ring) {
  json arr = json::array();
  for (const auto& p : ring) arr.push_back({p.x, p.y});
  if (!ring.empty()) arr.push_back({ring[0].x, ring[0].y});  // close
  return arr;
}

json summary_to_json(const LengthSummary& s) {
  return {{"n", s.n},
          {"mean", s.mean},
          {"cv", s.cv},
          {"skewness", s.skewness},
          {"top_decile_share", s.top_decile_share}};
}

LengthSummary summary_from_json(const json& j) {
  LengthSummary s;
  s.n = j.at("n").get<std::size_t>();
  s.mean = j.at("mean").get<double>();
  s.cv = j.at("cv").get<double>();
  s.skewness = j.at("skewness").get<double>();
  s.top_decile_share = j.at("top_decile_share").get<double>();
  return s;
}

}  // namespace

OpenSpace load_open_space(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size()) throw ParseError("empty scene input");
  if (text[i] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad json: ") + e.what());
    }
    return space_from_geojson(j, "scene");
  }
  return space_from_wkt(text);
}

std::string to_geojson(const OpenSpace& s) {
  json coords = json::array();
  coords.push_back(ring_to_coords(s.outer));
  for (const auto& h : s.holes) coords.push_back(ring_to_coords(h));
  json j = {{"type", "Feature"},
            {"properties", {{"name", s.name}}},
            {"geometry", {{"type", "Polygon"}, {"coordinates", coords}}}};
  return j.dump(2);
}

std::string map_to_geojson(const AxialMap& m, const SyntaxGraph& g,
                           const std::string& scene_name) {
  json feats = json::array();
  for (std::size_t i = 0; i < m.lines.size(); ++i) {
    const Chord& c = m.lines[i].ray.chord;
    json props = {{"id", i}, {"length", c.length()}};
    if (i < g.connectivity.size()) props["connectivity"] = g.connectivity[i];
    if (i < g.total_depth.size()) props["total_depth"] = g.total_depth[i];
    if (i < g.mean_depth.size()) props["mean_depth"] = g.mean_depth[i];
    if (i < g.integration.size()) props["integration"] = g.integration[i];
    feats.push_back(
        {{"type", "Feature"},
         {"properties", props},
         {"geometry",
          {{"type", "LineString"},
           {"coordinates", {{c.a.x, c.a.y}, {c.b.x, c.b.y}}}}}});
  }
  json j = {{"type", "FeatureCollection"},
            {"metadata",
             {{"scene", scene_name},
              {"strategy", to_string(m.strategy)},
              {"line_count", m.lines.size()},
              {"integration_radius", g.radius},
              {"integration_cap", g.integration_cap}}},
            {"features", feats}};
  return j.dump(2);
}

std::vector<Chord> load_axial_map(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad json: ") + e.what());
  }
  if (!j.is_object() || j.value("type", "") != "FeatureCollection")
    throw ParseError("expected a FeatureCollection");
  std::vector<Chord> out;
  for (const auto& f : j.at("features")) {
    const auto& geom = f.at("geometry");
    if (geom.value("type", "") != "LineString")
      throw ParseError("expected LineString features");
    const auto& coords = geom.at("coordinates");
    if (!coords.is_array() || coords.size() != 2)
      throw ParseError("axial lines must have exactly two points");
    out.push_back({{coords[0][0].get<double>(), coords[0][1].get<double>()},
                   {coords[1][0].get<double>(), coords[1][1].get<double>()}});
  }
  return out;
}

std::string medial_to_geojson(const MedialGraph& g) {
  json feats = json::array();
  auto polylines = medial_polylines(g);
  for (std::size_t i = 0; i < polylines.size(); ++i) {
    json coords = json::array();
    double len = 0.0;
    for (std::size_t k = 0; k < polylines[i].size(); ++k) {
      coords.push_back({polylines[i][k].x, polylines[i][k].y});
      if (k) len += distance(polylines[i][k - 1], polylines[i][k]);
    }
    feats.push_back({{"type", "Feature"},
                     {"properties", {{"id", i}, {"length", len}}},
                     {"geometry",
                      {{"type", "LineString"}, {"coordinates", coords}}}});
  }
  json j = {{"type", "FeatureCollection"},
            {"metadata",
             {{"vertices", g.vertices.size()},
              {"edges", g.edges.size()},
              {"step", g.step}}},
            {"features", feats}};
  return j.dump(2);
}

std::string rays_to_geojson(const RaySet& rs) {
  json feats = json::array();
  for (const auto& r : rs.rays)
    feats.push_back(
        {{"type", "Feature"},
         {"properties",
          {{"id", r.id},
           {"length", r.length},
           {"origin", {r.origin.x, r.origin.y}}}},
         {"geometry",
          {{"type", "LineString"},
           {"coordinates",
            {{r.chord.a.x, r.chord.a.y}, {r.chord.b.x, r.chord.b.y}}}}}});
  json j = {{"type", "FeatureCollection"}, {"features", feats}};
  return j.dump(2);
}

std::string buckets_to_geojson(const std::vector<Bucket>& buckets) {
  json feats = json::array();
  for (const auto& b : buckets) {
    json coords = json::array();
    coords.push_back(ring_to_coords(b.ring));
    feats.push_back({{"type", "Feature"},
                     {"properties",
                      {{"ray_id", b.ray_id}, {"hull_fallback", b.hull_fallback}}},
                     {"geometry",
                      {{"type", "Polygon"}, {"coordinates", coords}}}});
  }
  json j = {{"type", "FeatureCollection"}, {"features", feats}};
  return j.dump(2);
}

std::string report_to_json(const RunReport& r) {
  json j = {{"scene", r.scene},
            {"params",
             {{"angular_step", r.angular_step},
              {"theta", r.theta},
              {"eps_len", r.eps_len},
              {"resolution", r.resolution},
              {"radius", r.radius},
              {"strategy", r.strategy},
              {"rng_seed", r.rng_seed}}},
            {"timings",
             {{"medial_s", r.medial_s},
              {"rays_s", r.rays_s},
              {"reduce_s", r.reduce_s}}},
            {"counts",
             {{"medial_segments", r.medial_segments},
              {"rays", r.rays},
              {"axial_lines", r.axial_lines}}},
            {"summaries",
             {{"medial", summary_to_json(r.medial_summary)},
              {"axial", summary_to_json(r.axial_summary)}}},
            {"verdict", r.verdict}};
  return j.dump(2);
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad json: ") + e.what());
  }
  RunReport r;
  try {
    r.scene = j.at("scene").get<std::string>();
    const auto& p = j.at("params");
    r.angular_step = p.at("angular_step").get<double>();
    r.theta = p.at("theta").get<double>();
    r.eps_len = p.at("eps_len").get<double>();
    r.resolution = p.at("resolution").get<double>();
    r.radius = p.at("radius").get<int>();
    r.strategy = p.at("strategy").get<std::string>();
    r.rng_seed = p.at("rng_seed").get<std::uint64_t>();
    const auto& t = j.at("timings");
    r.medial_s = t.at("medial_s").get<double>();
    r.rays_s = t.at("rays_s").get<double>();
    r.reduce_s = t.at("reduce_s").get<double>();
    const auto& c = j.at("counts");
    r.medial_segments = c.at("medial_segments").get<std::size_t>();
    r.rays = c.at("rays").get<std::size_t>();
    r.axial_lines = c.at("axial_lines").get<std::size_t>();
    r.medial_summary = summary_from_json(j.at("summaries").at("medial"));
    r.axial_summary = summary_from_json(j.at("summaries").at("axial"));
    r.verdict = j.at("verdict").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report: ") + e.what());
  }
  return r;
}

}  // namespace axial
