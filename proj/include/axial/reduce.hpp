#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axial/bucket.hpp"
#include "axial/isovist.hpp"
#include "axial/medial.hpp"
#include "axial/openspace.hpp"

namespace axial {

enum class Strategy { Global, Local, RecursiveLocal };

struct AxialLine {
  Ray ray;
  std::vector<int> removed;  // ray ids this line's bucket absorbed (self included)
};

struct AxialMap {
  std::vector<AxialLine> lines;
  Strategy strategy = Strategy::Global;
};

struct ReduceParams {
  double theta = 0.98;      // in-bucket length fraction
  double eps_len = 0.02;    // ridge band width
  double angular_step = 1.0;
  double resolution = 0.0;  // 0 -> min_clearance/3
  std::size_t max_lines = 20000;
};

std::vector<Chord> map_chords(const AxialMap& m);

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

// Longest-first loop: pick the longest survivor (ties: crossings with the
// lines already chosen, then lowest id), absorb its bucket, repeat.
AxialMap reduce_global(const RaySet& rays, const OpenSpace& s,
                       const MedialGraph& g, const ReduceParams& p = {});

// Depth-first variant: after each chosen line, follow the longest surviving
// ray that intersects it; restart from the longest survivor when the chain
// dies out.
AxialMap reduce_local(const RaySet& rays, const OpenSpace& s,
                      const MedialGraph& g, const ReduceParams& p = {});

// Grow the map from a seed chord (default: a ridge near the outer centroid)
// by walking each accepted line at the working resolution and recursing into
// ridges that escape every bucket so far; a global pass tidies the result.
// rays_seen, when given, receives the number of distinct candidate ridges.
AxialMap generate_recursive(const OpenSpace& s, const MedialGraph& g,
                            const SpatialIndex& idx, const ReduceParams& p = {},
                            std::optional<Chord> seed = std::nullopt,
                            std::size_t* rays_seen = nullptr);

// Deterministic rejection-sampled interior points.
std::vector<Point2> sample_open_points(const OpenSpace& s, std::size_t n,
                                       std::uint64_t seed = 0x5eed);

// True if p sees any of 32 interior samples of the chord.
bool sees_chord(const Point2& p, const Chord& c, const OpenSpace& s,
                const SpatialIndex& idx);

double surveillance_fraction(const std::vector<Chord>& lines,
                             const OpenSpace& s, const SpatialIndex& idx,
                             std::size_t n = 10000, std::uint64_t seed = 0x5eed);

// Sampled points that no line of the map sees: the blind spots concave
// obstacle parts leave behind. Diagnostic only.
std::vector<Point2> detect_concave_gaps(const AxialMap& m, const OpenSpace& s,
                                        const SpatialIndex& idx,
                                        std::size_t n = 10000,
                                        std::uint64_t seed = 0x5eed);

}  // namespace axial
