#pragma once

#include <string>
#include <vector>

#include "axial/bucket.hpp"
#include "axial/isovist.hpp"
#include "axial/medial.hpp"
#include "axial/openspace.hpp"
#include "axial/reduce.hpp"
#include "axial/stats.hpp"
#include "axial/syntax.hpp"

namespace axial {

// Accepts GeoJSON (Polygon, single-polygon MultiPolygon, Feature,
// FeatureCollection) or a WKT POLYGON; picks the format by sniffing.
OpenSpace load_open_space(const std::string& text);

std::string to_geojson(const OpenSpace& s);

// FeatureCollection of 2-point LineStrings with per-line syntax measures and
// a top-level metadata block.
std::string map_to_geojson(const AxialMap& m, const SyntaxGraph& g,
                           const std::string& scene_name);
std::vector<Chord> load_axial_map(const std::string& text);

std::string medial_to_geojson(const MedialGraph& g);
std::string rays_to_geojson(const RaySet& rs);
std::string buckets_to_geojson(const std::vector<Bucket>& buckets);

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

}  // namespace axial
