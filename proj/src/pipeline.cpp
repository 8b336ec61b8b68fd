#include "axial/pipeline.hpp"

#include <chrono>
#include <thread>

#include "axial/errors.hpp"

namespace axial {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

PipelineResult run_pipeline(const OpenSpace& scene, const Params& params) {
  PipelineResult r;
  r.scene = scene;
  int threads = params.threads;
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());

  auto t0 = std::chrono::steady_clock::now();
  SpatialIndex idx(scene, params.index);
  r.medial = compute_medial_axis(scene, params.resolution, params.sample_cap);
  r.report.medial_s = seconds_since(t0);

  if (params.strategy == Strategy::RecursiveLocal) {
    ReduceParams rp{params.theta, params.eps_len, params.angular_step,
                    params.resolution};
    auto t1 = std::chrono::steady_clock::now();
    std::size_t seen = 0;
    r.map = generate_recursive(scene, r.medial, idx, rp, params.seed_line, &seen);
    r.report.reduce_s = seconds_since(t1);
    r.report.rays = seen;
    r.rays.rays.clear();
    for (const auto& l : r.map.lines) r.rays.rays.push_back(l.ray);
  } else {
    auto t1 = std::chrono::steady_clock::now();
    r.rays = build_ray_set(r.medial, scene, idx, params.angular_step,
                           params.eps_len, threads);
    r.report.rays_s = seconds_since(t1);
    ReduceParams rp{params.theta, params.eps_len, params.angular_step,
                    params.resolution};
    auto t2 = std::chrono::steady_clock::now();
    r.map = params.strategy == Strategy::Global
                ? reduce_global(r.rays, scene, r.medial, rp)
                : reduce_local(r.rays, scene, r.medial, rp);
    r.report.reduce_s = seconds_since(t2);
    r.report.rays = r.rays.rays.size();
  }

  r.syntax = build_syntax_graph(map_chords(r.map), scene.eps());
  compute_local_integration(r.syntax, params.radius);

  r.report.scene = scene.name;
  r.report.strategy = to_string(params.strategy);
  r.report.angular_step = params.angular_step;
  r.report.theta = params.theta;
  r.report.eps_len = params.eps_len;
  r.report.resolution = params.resolution;
  r.report.radius = params.radius;
  r.report.rng_seed = params.rng_seed;
  auto medial_lens = medial_segment_lengths(r.medial);
  r.report.medial_segments = medial_lens.size();
  r.report.axial_lines = r.map.lines.size();
  std::vector<double> axial_lens;
  for (const auto& l : r.map.lines) axial_lens.push_back(l.ray.length);
  r.report.medial_summary = length_summary(medial_lens);
  if (!axial_lens.empty()) r.report.axial_summary = length_summary(axial_lens);
  try {
    r.report.verdict =
        to_string(hierarchy_contrast(r.report.medial_summary, r.report.axial_summary));
  } catch (const InsufficientData&) {
    r.report.verdict = "insufficient_data";
  }
  return r;
}

}  // namespace axial
