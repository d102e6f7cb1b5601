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

#ifndef OBBSCENE_PIPELINE_H_
#define OBBSCENE_PIPELINE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obbscene/cloud_io.h"
#include "obbscene/point_cloud.h"
#include "obbscene/preprocess.h"
#include "obbscene/scene.h"
#include "obbscene/segmentation.h"

namespace obbscene {

enum class BoxMode { kAabb, kObb };

// Every field has a dotted key usable both in a config file ("key = value"
// lines, '#' comments) and as a command-line flag ("--key value").
struct PipelineConfig {
  std::string input_path;      // input.path
  std::string input_format = "auto";  // input.format: auto|xyz|csv|ply-ascii
  // workspace.min / workspace.max as "x,y,z".
  WorkspaceRegion workspace{{-1e6, -1e6, -1e6}, {1e6, 1e6, 1e6}};
  SorParams sor;               // sor.k, sor.u
  bool sor_enabled = true;     // sor.enabled
  SegmentationParams seg;      // seg.k, seg.d_th, seg.kappa_th,
                               // seg.alpha_deg, seg.min_cluster_size
  SplitParams split;           // split.seed_res, split.voxel_res
  bool split_enabled = true;   // split.enabled
  BoxMode box_mode = BoxMode::kObb;  // box.mode: aabb|obb
  double box_padding = 1e-9;   // box.padding, m added to every half extent
  std::vector<std::size_t> sphere_counts = {1, 2, 6};  // spheres.counts
  double margin = 0.0;         // margin, m
  bool residue_fallback_aabb = false;  // residue.fallback_aabb
  std::string scene_name = "scene";    // scene.name
  std::string output_scene;    // output.scene
  std::string output_report;   // output.report

  // Sets one field from its textual value. Throws Error(kInvalidArgument)
  // for an unknown key or a malformed value.
  void Set(std::string_view key, std::string_view value);
  // Nested invariants plus sphere counts >= 1 and margin >= 0.
  void Validate() const;
  // (key, value) for every field, in a fixed order.
  std::vector<std::pair<std::string, std::string>> Entries() const;

  static const std::vector<std::string>& Keys();
  // Parses config text; errors carry the line number.
  static PipelineConfig Parse(std::string_view text);
  static PipelineConfig Load(const std::string& path);
};

struct PipelineReport {
  std::size_t input_points = 0;
  std::size_t duplicate_points = 0;
  std::size_t cropped_points = 0;
  std::size_t sor_removed = 0;
  std::size_t clusters = 0;
  std::size_t subclusters = 0;
  std::size_t residue_points = 0;
  // Filtered cloud and, per environment volume, the indices into it that
  // the volume was fitted to.
  PointCloud filtered;
  std::vector<std::vector<std::size_t>> volume_sources;
  std::vector<Vec3> volume_normals;

  std::string ToText() const;
};

struct PipelineResult {
  CollisionScene scene;
  PipelineReport report;
};

// Crop, outlier removal, region growing and splitting. Returns the filtered
// cloud with the point groups to be bounded and the residue indices.
struct SegmentedCloud {
  PointCloud filtered;
  std::vector<Cluster> pieces;
  std::vector<std::size_t> residue;
  std::size_t clusters = 0;
  std::size_t sor_removed = 0;
};
SegmentedCloud SegmentCloud(const PipelineConfig& config,
                            const PointCloud& cloud);

// Full run on an in-memory cloud. Errors are rethrown with the stage name
// (crop, sor, segment, split, bound, cover).
PipelineResult run_pipeline(const PipelineConfig& config,
                            const PointCloud& cloud);
// Loads config.input_path first (stage "load").
PipelineResult run_pipeline(const PipelineConfig& config);

// "x y z cluster_id" lines for the filtered cloud; residue gets -1.
std::string ClusterDump(const SegmentedCloud& segmented);

}  // namespace obbscene

#endif  // OBBSCENE_PIPELINE_H_
