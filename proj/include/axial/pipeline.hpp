#pragma once

#include <cstdint>
#include <optional>

#include "axial/geometry.hpp"
#include "axial/isovist.hpp"
#include "axial/medial.hpp"
#include "axial/openspace.hpp"
#include "axial/reduce.hpp"
#include "axial/stats.hpp"
#include "axial/syntax.hpp"

namespace axial {

struct Params {
  double angular_step = 1.0;
  double theta = 0.98;
  double eps_len = 0.02;
  double resolution = 0.0;  // 0 -> min_clearance/3
  int radius = 3;
  Strategy strategy = Strategy::Local;
  std::optional<Chord> seed_line;
  std::uint64_t rng_seed = 1;
  int threads = 1;  // 0 -> hardware concurrency
  SpatialIndex::Kind index = SpatialIndex::Kind::Grid;
  std::size_t sample_cap = 2000000;
};

struct PipelineResult {
  OpenSpace scene;
  MedialGraph medial;
  RaySet rays;
  AxialMap map;
  SyntaxGraph syntax;
  RunReport report;
};

// Skeleton -> ray set -> reduction -> syntax measures -> report.
PipelineResult run_pipeline(const OpenSpace& scene, const Params& params = {});

}  // namespace axial
