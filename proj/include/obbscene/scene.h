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

#ifndef OBBSCENE_SCENE_H_
#define OBBSCENE_SCENE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obbscene/bounding.h"
#include "obbscene/collision.h"
#include "obbscene/vec3.h"

namespace obbscene {

// A box with optional sphere covers keyed by sphere count.
struct SceneVolume {
  Obb obb;
  std::map<std::size_t, SphereSet> spheres;

  friend bool operator==(const SceneVolume&, const SceneVolume&) = default;
};

struct CollisionScene {
  std::string name;
  std::map<std::string, std::string> metadata;
  SafetyMargin margin;
  std::vector<SceneVolume> environment;
  std::vector<SceneVolume> robot;

  friend bool operator==(const CollisionScene& a, const CollisionScene& b) {
    return a.name == b.name && a.metadata == b.metadata &&
           a.margin.delta == b.margin.delta &&
           a.environment == b.environment && a.robot == b.robot;
  }
};

// Adds cover_with_spheres(obb, n) for every n in counts.
SceneVolume MakeVolume(const Obb& obb, const std::vector<std::size_t>& counts);

// Rounds a value to 12 significant digits, the precision of scene files.
double Quantize(double v);
CollisionScene QuantizeScene(const CollisionScene& scene);

// JSON text with every number at 12 significant digits. Layout:
// {name, metadata, safety_margin, environment: [{obb: {center, rotation
// (row-major 9), half_extents}, spheres: {"N": [{center, radius}]},
// coverage_slack: {"N": value}}], robot: [...]}.
std::string SceneToJson(const CollisionScene& scene);
// Throws Error(kParseError) on malformed text or a missing field.
CollisionScene SceneFromJson(const std::string& text);
void save_scene(const std::string& path, const CollisionScene& scene);
CollisionScene load_scene(const std::string& path);

// A single query volume: {"obb": {...}} or {"vertices": [[x, y, z], ...]}.
struct VolumeFile {
  std::optional<Obb> obb;
  ConvexPolytope polytope;
};
VolumeFile ParseVolume(const std::string& text);
VolumeFile load_volume(const std::string& path);

// Row of equal cubes along y plus a moving cube at the origin.
struct ExampleSceneParams {
  std::size_t n_obstacles = 6;
  double spacing = 0.4;    // m between obstacle centers
  double cube_side = 0.4;  // m
  double x_offset = 0.5;   // m, obstacle centers from the sweep line
  std::vector<std::size_t> sphere_counts = {1, 2, 6};
};
// Obstacle centers are (x_offset, y_i, 0) with y_i symmetric about 0.
// Throws Error(kInvalidArgument) for n_obstacles == 0 or non-positive sizes.
CollisionScene generate_example_scene(const ExampleSceneParams& params = {});

struct SweepSpec {
  Obb moving;
  Vec3 axis{0.0, 1.0, 0.0};  // unit
  double y_min = -1.0;
  double y_max = 1.0;
  double step = 0.01;

  // Throws Error(kInvalidArgument) unless y_min < y_max, step > 0 and the
  // axis is unit length.
  void Validate() const;
  // floor((y_max - y_min) / step) + 1, robust to rounding in the quotient.
  std::size_t SampleCount() const;
  double Sample(std::size_t i) const { return y_min + static_cast<double>(i) * step; }
};

struct SweepRow {
  double y = 0.0;
  double dist_gjk = 0.0;
  std::vector<double> dist_sphere;  // one per sphere count
};

struct SweepTable {
  std::vector<std::size_t> sphere_counts;
  std::vector<SweepRow> rows;  // ascending y

  // Header "y,dist_gjk,dist_sphere_N1,..." and '\n' line endings.
  std::string ToCsv() const;
};

// For each sample, moves spec.moving by axis * y and records the smallest
// GJK distance to any environment box and, per sphere count, the smallest
// sphere_set_clearance (scene margin applied). Environment covers stored in
// the scene are reused; missing ones are generated.
// Throws Error(kEmptyInput) for a scene without environment volumes and
// NonConvergenceError naming the offending y.
SweepTable run_sweep(const CollisionScene& scene, const SweepSpec& spec,
                     const std::vector<std::size_t>& sphere_counts,
                     const GjkOptions& options = {});

}  // namespace obbscene

#endif  // OBBSCENE_SCENE_H_
