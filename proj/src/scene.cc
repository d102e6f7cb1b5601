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

#include "obbscene/scene.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "obbscene/error.h"

namespace obbscene {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kSceneDigits = 12;

Json VecToJson(const Vec3& v) {
  return Json::array({Quantize(v.x), Quantize(v.y), Quantize(v.z)});
}

Json ObbToJson(const Obb& box) {
  Json rotation = Json::array();
  for (double v : box.rotation.row_major()) rotation.push_back(Quantize(v));
  Json out;
  out["center"] = VecToJson(box.center);
  out["rotation"] = std::move(rotation);
  out["half_extents"] = VecToJson(box.half_extents);
  return out;
}

Json VolumeToJson(const SceneVolume& volume) {
  Json out;
  out["obb"] = ObbToJson(volume.obb);
  Json spheres = Json::object();
  Json slack = Json::object();
  for (const auto& [n, set] : volume.spheres) {
    Json list = Json::array();
    for (const Sphere& s : set.spheres) {
      Json entry;
      entry["center"] = VecToJson(s.center);
      entry["radius"] = Quantize(s.radius);
      list.push_back(std::move(entry));
    }
    spheres[std::to_string(n)] = std::move(list);
    slack[std::to_string(n)] = Quantize(set.coverage_slack);
  }
  out["spheres"] = std::move(spheres);
  out["coverage_slack"] = std::move(slack);
  return out;
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kParseError,
                std::string("scene JSON: missing field '") + key + "'");
  }
  return j.at(key);
}

double Number(const Json& j) {
  if (!j.is_number()) {
    throw Error(ErrorCode::kParseError, "scene JSON: expected a number");
  }
  return j.get<double>();
}

Vec3 VecFromJson(const Json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::kParseError, "scene JSON: expected [x, y, z]");
  }
  return {Number(j[0]), Number(j[1]), Number(j[2])};
}

Obb ObbFromJson(const Json& j) {
  Obb box;
  box.center = VecFromJson(Field(j, "center"));
  box.half_extents = VecFromJson(Field(j, "half_extents"));
  const Json& r = Field(j, "rotation");
  if (!r.is_array() || r.size() != 9) {
    throw Error(ErrorCode::kParseError,
                "scene JSON: rotation needs 9 row-major entries");
  }
  for (std::size_t i = 0; i < 9; ++i) box.rotation(i / 3, i % 3) = Number(r[i]);
  try {
    box.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseError, std::string("scene JSON: ") + e.what());
  }
  return box;
}

std::size_t CountKey(const std::string& key) {
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || n == 0) {
    throw Error(ErrorCode::kParseError,
                "scene JSON: sphere count key '" + key + "' is not a count");
  }
  return static_cast<std::size_t>(n);
}

SceneVolume VolumeFromJson(const Json& j) {
  SceneVolume volume;
  volume.obb = ObbFromJson(Field(j, "obb"));
  if (!j.contains("spheres")) return volume;
  const Json& spheres = j.at("spheres");
  const Json* slack = j.contains("coverage_slack") ? &j.at("coverage_slack")
                                                   : nullptr;
  for (const auto& [key, list] : spheres.items()) {
    SphereSet set;
    if (!list.is_array()) {
      throw Error(ErrorCode::kParseError, "scene JSON: spheres must be lists");
    }
    for (const Json& entry : list) {
      set.spheres.push_back(
          {VecFromJson(Field(entry, "center")), Number(Field(entry, "radius"))});
    }
    set.coverage_slack =
        slack != nullptr && slack->contains(key) ? Number(slack->at(key)) : 0.0;
    volume.spheres.emplace(CountKey(key), std::move(set));
  }
  return volume;
}

std::vector<SceneVolume> VolumesFromJson(const Json& j) {
  if (!j.is_array()) {
    throw Error(ErrorCode::kParseError, "scene JSON: volume list expected");
  }
  std::vector<SceneVolume> out;
  for (const Json& v : j) out.push_back(VolumeFromJson(v));
  return out;
}

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("JSON: ") + e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SphereSet QuantizeSet(const SphereSet& set) {
  SphereSet out;
  for (const Sphere& s : set.spheres) {
    out.spheres.push_back(
        {{Quantize(s.center.x), Quantize(s.center.y), Quantize(s.center.z)},
         Quantize(s.radius)});
  }
  out.coverage_slack = Quantize(set.coverage_slack);
  return out;
}

SceneVolume QuantizeVolume(const SceneVolume& v) {
  SceneVolume out;
  const Obb& b = v.obb;
  out.obb.center = {Quantize(b.center.x), Quantize(b.center.y),
                    Quantize(b.center.z)};
  out.obb.half_extents = {Quantize(b.half_extents.x),
                          Quantize(b.half_extents.y),
                          Quantize(b.half_extents.z)};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      out.obb.rotation(r, c) = Quantize(b.rotation(r, c));
    }
  }
  for (const auto& [n, set] : v.spheres) out.spheres.emplace(n, QuantizeSet(set));
  return out;
}

}  // namespace

SceneVolume MakeVolume(const Obb& obb, const std::vector<std::size_t>& counts) {
  SceneVolume v;
  v.obb = obb;
  for (std::size_t n : counts) v.spheres.emplace(n, cover_with_spheres(obb, n));
  return v;
}

double Quantize(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*g", kSceneDigits, v);
  return std::strtod(buf, nullptr);
}

CollisionScene QuantizeScene(const CollisionScene& scene) {
  CollisionScene out;
  out.name = scene.name;
  out.metadata = scene.metadata;
  out.margin.delta = Quantize(scene.margin.delta);
  for (const SceneVolume& v : scene.environment) {
    out.environment.push_back(QuantizeVolume(v));
  }
  for (const SceneVolume& v : scene.robot) out.robot.push_back(QuantizeVolume(v));
  return out;
}

std::string SceneToJson(const CollisionScene& scene) {
  Json j;
  j["name"] = scene.name;
  Json metadata = Json::object();
  for (const auto& [key, value] : scene.metadata) metadata[key] = value;
  j["metadata"] = std::move(metadata);
  j["safety_margin"] = Quantize(scene.margin.delta);
  Json env = Json::array();
  for (const SceneVolume& v : scene.environment) env.push_back(VolumeToJson(v));
  j["environment"] = std::move(env);
  Json robot = Json::array();
  for (const SceneVolume& v : scene.robot) robot.push_back(VolumeToJson(v));
  j["robot"] = std::move(robot);
  return j.dump(2) + "\n";
}

CollisionScene SceneFromJson(const std::string& text) {
  const Json j = ParseJson(text);
  CollisionScene scene;
  const Json& name = Field(j, "name");
  if (!name.is_string()) {
    throw Error(ErrorCode::kParseError, "scene JSON: name must be a string");
  }
  scene.name = name.get<std::string>();
  if (j.contains("metadata")) {
    for (const auto& [key, value] : j.at("metadata").items()) {
      scene.metadata[key] = value.is_string() ? value.get<std::string>()
                                              : value.dump();
    }
  }
  if (j.contains("safety_margin")) {
    scene.margin.delta = Number(j.at("safety_margin"));
  }
  scene.environment = VolumesFromJson(Field(j, "environment"));
  scene.robot = VolumesFromJson(Field(j, "robot"));
  return scene;
}

void save_scene(const std::string& path, const CollisionScene& scene) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << SceneToJson(scene);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
}

CollisionScene load_scene(const std::string& path) {
  return SceneFromJson(ReadFile(path));
}

VolumeFile ParseVolume(const std::string& text) {
  const Json j = ParseJson(text);
  VolumeFile out;
  if (j.is_object() && j.contains("obb")) {
    out.obb = ObbFromJson(j.at("obb"));
    out.polytope = obb_to_polytope(*out.obb);
    return out;
  }
  const Json& vertices = Field(j, "vertices");
  if (!vertices.is_array() || vertices.empty()) {
    throw Error(ErrorCode::kParseError, "volume JSON: vertices must be a list");
  }
  std::vector<Point3> pts;
  for (const Json& v : vertices) pts.push_back(VecFromJson(v));
  try {
    out.polytope = ConvexPolytope(std::move(pts));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseError, std::string("volume JSON: ") + e.what());
  }
  return out;
}

VolumeFile load_volume(const std::string& path) {
  return ParseVolume(ReadFile(path));
}

CollisionScene generate_example_scene(const ExampleSceneParams& params) {
  if (params.n_obstacles == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one obstacle");
  }
  if (!(params.cube_side > 0.0) || !(params.spacing > 0.0) ||
      !std::isfinite(params.cube_side) || !std::isfinite(params.spacing) ||
      !std::isfinite(params.x_offset)) {
    throw Error(ErrorCode::kInvalidArgument,
                "cube side and spacing must be positive and finite");
  }
  for (std::size_t n : params.sphere_counts) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sphere count 0");
  }
  const double h = 0.5 * params.cube_side;
  CollisionScene scene;
  scene.name = "example";
  scene.metadata["generator"] = "example";
  scene.metadata["n_obstacles"] = std::to_string(params.n_obstacles);

  const double first =
      -0.5 * static_cast<double>(params.n_obstacles - 1) * params.spacing;
  for (std::size_t i = 0; i < params.n_obstacles; ++i) {
    Obb box;
    box.center = {params.x_offset,
                  first + static_cast<double>(i) * params.spacing, 0.0};
    box.half_extents = {h, h, h};
    scene.environment.push_back(MakeVolume(box, params.sphere_counts));
  }
  Obb moving;
  moving.half_extents = {h, h, h};
  scene.robot.push_back(MakeVolume(moving, params.sphere_counts));
  return scene;
}

void SweepSpec::Validate() const {
  moving.Validate();
  if (!std::isfinite(y_min) || !std::isfinite(y_max) || !(y_min < y_max)) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs y_min < y_max");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidArgument, "sweep step must be > 0");
  }
  if (!IsFinite(axis) || std::abs(Norm(axis) - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "sweep axis must be unit length");
  }
}

std::size_t SweepSpec::SampleCount() const {
  // The small bias keeps e.g. 2.0 / 0.01 = 199.99999999999997 at 200.
  return static_cast<std::size_t>(std::floor((y_max - y_min) / step + 1e-9)) +
         1;
}

std::string SweepTable::ToCsv() const {
  std::string out = "y,dist_gjk";
  for (std::size_t n : sphere_counts) out += ",dist_sphere_N" + std::to_string(n);
  out += '\n';
  char buf[40];
  for (const SweepRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.12g", row.y);
    out += buf;
    std::snprintf(buf, sizeof(buf), ",%.17g", row.dist_gjk);
    out += buf;
    for (double d : row.dist_sphere) {
      std::snprintf(buf, sizeof(buf), ",%.17g", d);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

SweepTable run_sweep(const CollisionScene& scene, const SweepSpec& spec,
                     const std::vector<std::size_t>& sphere_counts,
                     const GjkOptions& options) {
  spec.Validate();
  if (scene.environment.empty()) {
    throw Error(ErrorCode::kEmptyInput, "sweep needs environment volumes");
  }
  for (std::size_t n : sphere_counts) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sphere count 0");
  }

  std::vector<ConvexPolytope> env_polytopes;
  // env_covers[c][e]: cover of environment box e with sphere_counts[c].
  std::vector<std::vector<SphereSet>> env_covers(sphere_counts.size());
  for (const SceneVolume& v : scene.environment) {
    env_polytopes.push_back(obb_to_polytope(v.obb));
    for (std::size_t c = 0; c < sphere_counts.size(); ++c) {
      const auto it = v.spheres.find(sphere_counts[c]);
      env_covers[c].push_back(it != v.spheres.end()
                                  ? it->second
                                  : cover_with_spheres(v.obb, sphere_counts[c]));
    }
  }

  SweepTable table;
  table.sphere_counts = sphere_counts;
  const std::size_t count = spec.SampleCount();
  table.rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SweepRow row;
    row.y = spec.Sample(i);
    const Obb moved = spec.moving.Translated(spec.axis * row.y);
    const ConvexPolytope moving = obb_to_polytope(moved);
    row.dist_gjk = std::numeric_limits<double>::infinity();
    for (const ConvexPolytope& env : env_polytopes) {
      try {
        row.dist_gjk =
            std::min(row.dist_gjk, gjk_query(moving, env, options).distance);
      } catch (const NonConvergenceError& e) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "sweep at y=%.12g: ", row.y);
        throw NonConvergenceError(buf + e.detail(),
                                  e.best_distance(), e.iterations());
      }
    }
    for (std::size_t c = 0; c < sphere_counts.size(); ++c) {
      const SphereSet cover = cover_with_spheres(moved, sphere_counts[c]);
      double best = std::numeric_limits<double>::infinity();
      for (const SphereSet& env : env_covers[c]) {
        best = std::min(best, sphere_set_clearance(cover, env, scene.margin));
      }
      row.dist_sphere.push_back(best);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace obbscene
