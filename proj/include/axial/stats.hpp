#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace axial {

struct LengthSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double cv = 0.0;                // population stddev / mean
  double skewness = 0.0;          // adjusted Fisher-Pearson, 0 when n < 3
  double top_decile_share = 0.0;  // share held by the ceil(n/10) longest
};

LengthSummary length_summary(const std::vector<double>& lengths);

enum class Verdict { Hierarchical, Flat, Inconclusive };

// Axial lines read as hierarchical when they are strictly more dispersed,
// more skewed and more top-heavy than the skeleton segments; flat when
// strictly less on all three; anything mixed is inconclusive.
Verdict hierarchy_contrast(const LengthSummary& medial,
                           const LengthSummary& axial);

std::string to_string(Verdict v);

struct RunReport {
  std::string scene;
  std::string strategy = "local";
  double angular_step = 1.0;
  double theta = 0.98;
  double eps_len = 0.02;
  double resolution = 0.0;
  int radius = 3;
  std::uint64_t rng_seed = 1;
  double medial_s = 0.0;
  double rays_s = 0.0;
  double reduce_s = 0.0;
  std::size_t medial_segments = 0;
  std::size_t rays = 0;
  std::size_t axial_lines = 0;
  LengthSummary medial_summary;
  LengthSummary axial_summary;
  std::string verdict;
};

}  // namespace axial
