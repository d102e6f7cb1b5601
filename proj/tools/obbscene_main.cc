// Copyright 2026 The obbscene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: pipeline, segment, sweep, example, collide.
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "obbscene/cloud_io.h"
#include "obbscene/collision.h"
#include "obbscene/error.h"
#include "obbscene/pipeline.h"
#include "obbscene/scene.h"
#include "obbscene/simd/kernels.h"

namespace {

using obbscene::Error;
using obbscene::ErrorCode;

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
}

std::vector<std::size_t> ParseCounts(const std::string& text) {
  obbscene::PipelineConfig scratch;
  scratch.Set("spheres.counts", text);
  return scratch.sphere_counts;
}

obbscene::Vec3 ParseVec(const std::string& key, const std::string& text) {
  obbscene::Vec3 v;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &v.x, &v.y, &v.z, &tail) !=
      3) {
    throw Error(ErrorCode::kInvalidArgument,
                key + ": expected 'x,y,z', got '" + text + "'");
  }
  return v;
}

// Config file plus one flag per config key.
struct ConfigOptions {
  std::string file;
  std::map<std::string, std::string> overrides;

  void Register(CLI::App* cmd) {
    cmd->add_option("-c,--config", file, "config file (key = value lines)");
    for (const std::string& key : obbscene::PipelineConfig::Keys()) {
      cmd->add_option("--" + key, overrides[key], "override '" + key + "'");
    }
  }

  obbscene::PipelineConfig Build(const CLI::App* cmd) const {
    obbscene::PipelineConfig config;
    if (!file.empty()) config = obbscene::PipelineConfig::Load(file);
    for (const auto& [key, value] : overrides) {
      if (cmd->count("--" + key) > 0) config.Set(key, value);
    }
    config.Validate();
    return config;
  }
};

int RunPipeline(const obbscene::PipelineConfig& config) {
  const obbscene::PipelineResult result = obbscene::run_pipeline(config);
  WriteText(config.output_scene, obbscene::SceneToJson(result.scene));
  if (config.output_report.empty()) {
    std::cerr << result.report.ToText();
  } else {
    WriteText(config.output_report, result.report.ToText());
  }
  return 0;
}

int RunSegment(const obbscene::PipelineConfig& config,
               const std::string& output) {
  if (config.input_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "input.path is not set");
  }
  const obbscene::CloudFormat format =
      config.input_format == "auto"
          ? obbscene::FormatFromPath(config.input_path)
          : obbscene::ParseCloudFormat(config.input_format);
  const obbscene::PointCloud cloud =
      obbscene::load_cloud(config.input_path, format);
  const obbscene::SegmentedCloud seg = obbscene::SegmentCloud(config, cloud);
  WriteText(output, obbscene::ClusterDump(seg));
  std::cerr << "clusters " << seg.clusters << "\npieces " << seg.pieces.size()
            << "\nresidue_points " << seg.residue.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point clouds to oriented-box collision scenes."};
  app.require_subcommand(1);
  std::string backend = "auto";
  app.add_option("--backend", backend, "kernel backend: auto|scalar|avx2|neon")
      ->capture_default_str();

  CLI::App* pipeline = app.add_subcommand("pipeline", "config -> scene JSON");
  ConfigOptions pipeline_opts;
  pipeline_opts.Register(pipeline);

  CLI::App* segment =
      app.add_subcommand("segment", "cloud -> 'x y z cluster_id' dump");
  ConfigOptions segment_opts;
  segment_opts.Register(segment);
  std::string segment_out;
  segment->add_option("-o,--output", segment_out, "dump path (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "scene + sweep spec -> CSV");
  std::string sweep_scene, sweep_moving, sweep_out, sweep_counts = "1,2,6";
  std::string sweep_axis = "0,1,0";
  double y_min = -1.0, y_max = 1.0, step = 0.01, tol = 1e-10;
  int max_iter = 128;
  sweep->add_option("--scene", sweep_scene, "scene JSON")->required();
  sweep->add_option("--moving", sweep_moving,
                    "volume file with an obb (default: first robot volume)");
  sweep->add_option("--y-min", y_min)->capture_default_str();
  sweep->add_option("--y-max", y_max)->capture_default_str();
  sweep->add_option("--step", step)->capture_default_str();
  sweep->add_option("--axis", sweep_axis, "unit axis 'x,y,z'")
      ->capture_default_str();
  sweep->add_option("--spheres", sweep_counts, "sphere counts 'N1,N2,...'")
      ->capture_default_str();
  sweep->add_option("--tol", tol)->capture_default_str();
  sweep->add_option("--max-iter", max_iter)->capture_default_str();
  sweep->add_option("-o,--output", sweep_out, "CSV path (default stdout)");

  CLI::App* example = app.add_subcommand("example", "generate the sweep scene");
  obbscene::ExampleSceneParams ex;
  std::string ex_counts = "1,2,6", ex_out;
  example->add_option("--n", ex.n_obstacles)->capture_default_str();
  example->add_option("--spacing", ex.spacing)->capture_default_str();
  example->add_option("--side", ex.cube_side)->capture_default_str();
  example->add_option("--x-offset", ex.x_offset)->capture_default_str();
  example->add_option("--spheres", ex_counts)->capture_default_str();
  example->add_option("-o,--output", ex_out, "scene path (default stdout)");

  CLI::App* collide =
      app.add_subcommand("collide", "two volume files -> distance");
  std::string vol_a, vol_b;
  double margin = 0.0;
  collide->add_option("a", vol_a, "first volume JSON")->required();
  collide->add_option("b", vol_b, "second volume JSON")->required();
  collide->add_option("--tol", tol)->capture_default_str();
  collide->add_option("--max-iter", max_iter)->capture_default_str();
  collide->add_option("--margin", margin, "sphere safety margin, m")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    obbscene::simd::SetBackend(obbscene::simd::ParseBackend(backend));

    if (*pipeline) return RunPipeline(pipeline_opts.Build(pipeline));
    if (*segment) return RunSegment(segment_opts.Build(segment), segment_out);

    const obbscene::GjkOptions gjk{tol, max_iter};
    if (*sweep) {
      const obbscene::CollisionScene scene = obbscene::load_scene(sweep_scene);
      obbscene::SweepSpec spec;
      if (!sweep_moving.empty()) {
        const obbscene::VolumeFile v = obbscene::load_volume(sweep_moving);
        if (!v.obb) {
          throw Error(ErrorCode::kInvalidArgument,
                      "moving volume must be an obb");
        }
        spec.moving = *v.obb;
      } else if (!scene.robot.empty()) {
        spec.moving = scene.robot.front().obb;
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "scene has no robot volume; pass --moving");
      }
      spec.axis = ParseVec("--axis", sweep_axis);
      spec.y_min = y_min;
      spec.y_max = y_max;
      spec.step = step;
      const obbscene::SweepTable table =
          obbscene::run_sweep(scene, spec, ParseCounts(sweep_counts), gjk);
      WriteText(sweep_out, table.ToCsv());
      return 0;
    }
    if (*example) {
      ex.sphere_counts = ParseCounts(ex_counts);
      WriteText(ex_out,
                obbscene::SceneToJson(obbscene::generate_example_scene(ex)));
      return 0;
    }
    if (*collide) {
      const obbscene::VolumeFile a = obbscene::load_volume(vol_a);
      const obbscene::VolumeFile b = obbscene::load_volume(vol_b);
      const obbscene::DistanceResult r =
          obbscene::gjk_query(a.polytope, b.polytope, gjk);
      std::printf("colliding %s\ndistance %.17g\niterations %d\n",
                  r.colliding ? "true" : "false", r.distance, r.iterations);
      if (!r.colliding) {
        std::printf("witness_a %.17g %.17g %.17g\nwitness_b %.17g %.17g %.17g\n",
                    r.witness_a.x, r.witness_a.y, r.witness_a.z, r.witness_b.x,
                    r.witness_b.y, r.witness_b.z);
      }
      if (a.obb && b.obb) {
        std::printf("sat_disjoint %s\n",
                    obbscene::sat_boxes(*a.obb, *b.obb) ? "true" : "false");
        const obbscene::SafetyMargin m{margin};
        std::printf("sphere_clearance_N1 %.17g\n",
                    obbscene::sphere_set_clearance(
                        obbscene::cover_with_spheres(*a.obb, 1),
                        obbscene::cover_with_spheres(*b.obb, 1), m));
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "obbscene: " << e.what() << "\n";
    return obbscene::IsNumericalFailure(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "obbscene: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
