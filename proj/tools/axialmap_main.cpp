#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axial/bucket.hpp"
#include "axial/errors.hpp"
#include "axial/io.hpp"
#include "axial/pipeline.hpp"
#include "axial/svg.hpp"
#include "axial/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitPipeline = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw axial::ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw axial::ParseError("cannot write " + path);
  out << content;
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

axial::OpenSpace load_scene_arg(const std::string& arg) {
  if (file_exists(arg)) return axial::load_open_space(read_file(arg));
  return axial::scene_from_spec(arg);
}

int threads_from_env() {
  const char* env = std::getenv("AXIAL_THREADS");
  if (!env) return 0;
  int v = std::atoi(env);
  return v > 0 ? v : 1;
}

axial::Chord parse_seed_line(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw axial::InvalidSpec("bad --seed-line, expected x1,y1,x2,y2");
    }
  }
  if (vals.size() != 4)
    throw axial::InvalidSpec("bad --seed-line, expected x1,y1,x2,y2");
  return {{vals[0], vals[1]}, {vals[2], vals[3]}};
}

struct GenerateOptions {
  std::string input, scene, out, svg, report;
  std::string emit_medial, emit_rays, emit_buckets;
  std::string strategy = "local", seed_line, config, index = "grid";
  double angular_step = 1.0, theta = 0.98, eps_len = 0.02, resolution = 0.0;
  int radius = 3;
  std::uint64_t rng_seed = 1;
  std::size_t sample_cap = 2000000;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r\"");
      auto e = s.find_last_not_of(" \t\r\"");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    kv[key] = val;
  }
  return kv;
}

int run_generate(const GenerateOptions& o, const CLI::App* cmd) {
  GenerateOptions opts = o;
  if (!opts.config.empty()) {
    auto kv = read_config(opts.config);
    auto flag_given = [cmd](const std::string& name) {
      return cmd->count(name) > 0;
    };
    for (const auto& [key, val] : kv) {
      try {
        if (key == "angular_step") {
          if (!flag_given("--angular-step")) opts.angular_step = std::stod(val);
        } else if (key == "theta") {
          if (!flag_given("--theta")) opts.theta = std::stod(val);
        } else if (key == "eps_len") {
          if (!flag_given("--eps-len")) opts.eps_len = std::stod(val);
        } else if (key == "resolution") {
          if (!flag_given("--resolution")) opts.resolution = std::stod(val);
        } else if (key == "strategy") {
          if (!flag_given("--strategy")) opts.strategy = val;
        } else if (key == "radius") {
          if (!flag_given("--radius")) opts.radius = std::stoi(val);
        } else if (key == "rng_seed") {
          if (!flag_given("--rng-seed"))
            opts.rng_seed = std::stoull(val);
        } else if (key == "sample_cap") {
          if (!flag_given("--sample-cap"))
            opts.sample_cap = std::stoull(val);
        } else if (key == "index") {
          if (!flag_given("--index")) opts.index = val;
        } else {
          throw axial::ParseError("unknown config key: " + key);
        }
      } catch (const axial::ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw axial::ParseError("bad config value for " + key);
      }
    }
  }

  std::string source = !opts.scene.empty() ? opts.scene : opts.input;
  if (source.empty()) {
    std::cerr << "generate needs a scene (positional path or --scene)\n";
    return kExitUsage;
  }
  axial::OpenSpace scene = load_scene_arg(source);

  axial::Params params;
  params.angular_step = opts.angular_step;
  params.theta = opts.theta;
  params.eps_len = opts.eps_len;
  params.resolution = opts.resolution;
  params.radius = opts.radius;
  params.strategy = axial::strategy_from_string(opts.strategy);
  params.rng_seed = opts.rng_seed;
  params.threads = threads_from_env();
  params.sample_cap = opts.sample_cap;
  if (opts.index == "grid")
    params.index = axial::SpatialIndex::Kind::Grid;
  else if (opts.index == "bsp")
    params.index = axial::SpatialIndex::Kind::Bsp;
  else
    throw axial::InvalidSpec("unknown index kind: " + opts.index);
  if (!opts.seed_line.empty()) params.seed_line = parse_seed_line(opts.seed_line);

  auto result = axial::run_pipeline(scene, params);

  if (!opts.out.empty())
    write_file(opts.out,
               axial::map_to_geojson(result.map, result.syntax, scene.name));
  if (!opts.svg.empty())
    write_file(opts.svg,
               axial::svg_document(scene, axial::map_chords(result.map),
                                   &result.syntax.integration));
  if (!opts.report.empty())
    write_file(opts.report, axial::report_to_json(result.report));
  if (!opts.emit_medial.empty())
    write_file(opts.emit_medial, axial::medial_to_geojson(result.medial));
  if (!opts.emit_rays.empty())
    write_file(opts.emit_rays, axial::rays_to_geojson(result.rays));
  if (!opts.emit_buckets.empty()) {
    std::vector<axial::Bucket> buckets;
    for (const auto& line : result.map.lines)
      buckets.push_back(axial::form_bucket(line.ray, scene, result.medial));
    write_file(opts.emit_buckets, axial::buckets_to_geojson(buckets));
  }

  std::cout << "scene=" << scene.name << " strategy=" << opts.strategy
            << " lines=" << result.map.lines.size()
            << " rays=" << result.report.rays
            << " medial_segments=" << result.report.medial_segments
            << " verdict=" << result.report.verdict << "\n";
  return kExitOk;
}

struct MetricsOptions {
  std::string map_path, out, svg, scene;
  int radius = 3;
};

int run_metrics(const MetricsOptions& o) {
  auto chords = axial::load_axial_map(read_file(o.map_path));
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  if (!chords.empty()) {
    minx = maxx = chords[0].a.x;
    miny = maxy = chords[0].a.y;
    for (const auto& c : chords) {
      for (const auto& p : {c.a, c.b}) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
      }
    }
  }
  double diag = std::max(1e-9, std::hypot(maxx - minx, maxy - miny));
  auto g = axial::build_syntax_graph(chords, 1e-9 * diag);
  axial::compute_local_integration(g, o.radius);

  std::printf("%4s %12s %12s %12s %12s\n", "id", "length", "connectivity",
              "mean_depth", "integration");
  for (std::size_t i = 0; i < chords.size(); ++i)
    std::printf("%4zu %12.4f %12d %12.4f %12.4f\n", i, chords[i].length(),
                g.connectivity[i], g.mean_depth[i], g.integration[i]);

  if (!o.out.empty()) {
    axial::AxialMap m;
    for (std::size_t i = 0; i < chords.size(); ++i)
      m.lines.push_back({{chords[i], chords[i].midpoint(),
                          chords[i].length(), static_cast<int>(i)},
                         {}});
    write_file(o.out, axial::map_to_geojson(m, g, "map"));
  }
  if (!o.svg.empty()) {
    axial::OpenSpace outline;
    if (!o.scene.empty()) {
      outline = load_scene_arg(o.scene);
    } else {
      double pad = 0.05 * diag + 1e-6;
      outline = axial::make_open_space({{minx - pad, miny - pad},
                                        {maxx + pad, miny - pad},
                                        {maxx + pad, maxy + pad},
                                        {minx - pad, maxy + pad}},
                                       {}, "map");
    }
    write_file(o.svg, axial::svg_document(outline, chords, &g.integration));
  }
  return kExitOk;
}

int run_stats(const std::vector<std::string>& paths) {
  std::printf("%-20s %10s %16s %12s %-16s\n", "scene", "time_s",
              "medial_segments", "axial_lines", "verdict");
  for (const auto& path : paths) {
    auto r = axial::report_from_json(read_file(path));
    std::printf("%-20s %10.3f %16zu %12zu %-16s\n", r.scene.c_str(),
                r.medial_s + r.rays_s + r.reduce_s, r.medial_segments,
                r.axial_lines, r.verdict.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axialmap: generate axial maps of polygon-with-holes scenes"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* cmd_gen = app.add_subcommand("generate", "run the full pipeline");
  cmd_gen->add_option("input", gen.input, "scene file (GeoJSON or WKT)");
  cmd_gen->add_option("--scene", gen.scene,
                      "scene file or synthetic spec (rect:10x4, t:10x2, "
                      "grid:2x2[:8,4], city:40[:7], pocket)");
  cmd_gen->add_option("--out", gen.out, "axial map GeoJSON path");
  cmd_gen->add_option("--svg", gen.svg, "SVG render path");
  cmd_gen->add_option("--report", gen.report, "run report JSON path");
  cmd_gen->add_option("--emit-medial", gen.emit_medial, "skeleton GeoJSON path");
  cmd_gen->add_option("--emit-rays", gen.emit_rays, "ray set GeoJSON path");
  cmd_gen->add_option("--emit-buckets", gen.emit_buckets, "bucket GeoJSON path");
  cmd_gen->add_option("--strategy", gen.strategy,
                      "global | local | recursive_local");
  cmd_gen->add_option("--angular-step", gen.angular_step, "fan step, degrees");
  cmd_gen->add_option("--theta", gen.theta, "in-bucket length fraction");
  cmd_gen->add_option("--eps-len", gen.eps_len, "ridge band fraction");
  cmd_gen->add_option("--resolution", gen.resolution,
                      "sampling step override (default min_clearance/3)");
  cmd_gen->add_option("--radius", gen.radius, "integration radius");
  cmd_gen->add_option("--seed-line", gen.seed_line, "x1,y1,x2,y2");
  cmd_gen->add_option("--rng-seed", gen.rng_seed, "seed for sampling draws");
  cmd_gen->add_option("--sample-cap", gen.sample_cap, "max boundary samples");
  cmd_gen->add_option("--index", gen.index, "grid | bsp");
  cmd_gen->add_option("--config", gen.config, "key=value defaults file");

  MetricsOptions met;
  auto* cmd_met = app.add_subcommand("metrics", "syntax measures of a map");
  cmd_met->add_option("map", met.map_path, "axial map GeoJSON")->required();
  cmd_met->add_option("--radius", met.radius, "integration radius");
  cmd_met->add_option("--out", met.out, "annotated GeoJSON path");
  cmd_met->add_option("--svg", met.svg, "SVG render path");
  cmd_met->add_option("--scene", met.scene, "scene outline for the render");

  std::vector<std::string> report_paths;
  auto* cmd_sta = app.add_subcommand("stats", "tabulate run reports");
  cmd_sta->add_option("reports", report_paths, "report JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen, cmd_gen);
    if (cmd_met->parsed()) return run_metrics(met);
    if (cmd_sta->parsed()) {
      if (report_paths.empty()) {
        std::cerr << "stats needs at least one report file\n";
        return kExitUsage;
      }
      return run_stats(report_paths);
    }
  } catch (const axial::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const axial::ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const axial::DegenerateScene& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const axial::InvalidSpec& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const axial::PipelineError& e) {
    std::cerr << "pipeline error: " << e.what() << "\n";
    return kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitUsage;
}
