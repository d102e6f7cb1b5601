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

#include "obbscene/pipeline.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

#include "obbscene/bounding.h"
#include "obbscene/error.h"

namespace obbscene {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value,
                           const char* expected) {
  throw Error(ErrorCode::kInvalidArgument,
              "config '" + std::string(key) + "': '" + std::string(value) +
                  "' is not " + expected);
}

double ToDouble(std::string_view key, std::string_view value) {
  value = Trim(value);
  if (!value.empty() && value.front() == '+') value.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() ||
      !std::isfinite(out)) {
    BadValue(key, value, "a finite number");
  }
  return out;
}

std::size_t ToCount(std::string_view key, std::string_view value) {
  value = Trim(value);
  std::size_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() ||
      value.empty()) {
    BadValue(key, value, "a non-negative integer");
  }
  return out;
}

bool ToBool(std::string_view key, std::string_view value) {
  value = Trim(value);
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  BadValue(key, value, "a boolean");
}

std::vector<std::string_view> SplitList(std::string_view value) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(Trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

Vec3 ToVec3(std::string_view key, std::string_view value) {
  const auto parts = SplitList(value);
  if (parts.size() != 3) BadValue(key, value, "'x,y,z'");
  return {ToDouble(key, parts[0]), ToDouble(key, parts[1]),
          ToDouble(key, parts[2])};
}

std::string Num(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string VecText(const Vec3& v) {
  return Num(v.x) + "," + Num(v.y) + "," + Num(v.z);
}

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename F>
auto Staged(const char* stage, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const NonConvergenceError&) {
    throw;
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.WithStage(stage);
  }
}

}  // namespace

const std::vector<std::string>& PipelineConfig::Keys() {
  static const std::vector<std::string> keys = {
      "input.path",         "input.format",      "workspace.min",
      "workspace.max",      "sor.enabled",       "sor.k",
      "sor.u",              "seg.k",             "seg.d_th",
      "seg.kappa_th",       "seg.alpha_deg",     "seg.min_cluster_size",
      "split.enabled",      "split.seed_res",    "split.voxel_res",
      "box.mode",           "box.padding",       "spheres.counts",
      "margin",             "residue.fallback_aabb", "scene.name",
      "output.scene",       "output.report"};
  return keys;
}

void PipelineConfig::Set(std::string_view key, std::string_view raw) {
  const std::string_view value = Trim(raw);
  if (key == "input.path") {
    input_path = std::string(value);
  } else if (key == "input.format") {
    if (value != "auto") ParseCloudFormat(value);
    input_format = std::string(value);
  } else if (key == "workspace.min") {
    workspace.min = ToVec3(key, value);
  } else if (key == "workspace.max") {
    workspace.max = ToVec3(key, value);
  } else if (key == "sor.enabled") {
    sor_enabled = ToBool(key, value);
  } else if (key == "sor.k") {
    sor.k = ToCount(key, value);
  } else if (key == "sor.u") {
    sor.u = ToDouble(key, value);
  } else if (key == "seg.k") {
    seg.k = ToCount(key, value);
  } else if (key == "seg.d_th") {
    seg.d_th = ToDouble(key, value);
  } else if (key == "seg.kappa_th") {
    seg.kappa_th = ToDouble(key, value);
  } else if (key == "seg.alpha_deg") {
    seg.alpha_th = ToDouble(key, value) * std::numbers::pi / 180.0;
  } else if (key == "seg.min_cluster_size") {
    seg.min_cluster_size = ToCount(key, value);
  } else if (key == "split.enabled") {
    split_enabled = ToBool(key, value);
  } else if (key == "split.seed_res") {
    split.seed_resolution = ToDouble(key, value);
  } else if (key == "split.voxel_res") {
    split.voxel_resolution = ToDouble(key, value);
  } else if (key == "box.mode") {
    if (value == "aabb") {
      box_mode = BoxMode::kAabb;
    } else if (value == "obb") {
      box_mode = BoxMode::kObb;
    } else {
      BadValue(key, value, "'aabb' or 'obb'");
    }
  } else if (key == "box.padding") {
    box_padding = ToDouble(key, value);
  } else if (key == "spheres.counts") {
    sphere_counts.clear();
    if (!value.empty()) {
      for (std::string_view part : SplitList(value)) {
        sphere_counts.push_back(ToCount(key, part));
      }
    }
  } else if (key == "margin") {
    margin = ToDouble(key, value);
  } else if (key == "residue.fallback_aabb") {
    residue_fallback_aabb = ToBool(key, value);
  } else if (key == "scene.name") {
    scene_name = std::string(value);
  } else if (key == "output.scene") {
    output_scene = std::string(value);
  } else if (key == "output.report") {
    output_report = std::string(value);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown config key '" + std::string(key) + "'");
  }
}

void PipelineConfig::Validate() const {
  workspace.Validate();
  sor.Validate();
  seg.Validate();
  split.Validate();
  for (std::size_t n : sphere_counts) {
    if (n < 1) {
      throw Error(ErrorCode::kInvalidArgument, "sphere counts must be >= 1");
    }
  }
  if (!(margin >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "margin must be >= 0");
  }
  if (!(box_padding >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "box.padding must be >= 0");
  }
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::Entries()
    const {
  std::string counts;
  for (std::size_t i = 0; i < sphere_counts.size(); ++i) {
    if (i > 0) counts += ",";
    counts += std::to_string(sphere_counts[i]);
  }
  const auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  return {
      {"input.path", input_path},
      {"input.format", input_format},
      {"workspace.min", VecText(workspace.min)},
      {"workspace.max", VecText(workspace.max)},
      {"sor.enabled", flag(sor_enabled)},
      {"sor.k", std::to_string(sor.k)},
      {"sor.u", Num(sor.u)},
      {"seg.k", std::to_string(seg.k)},
      {"seg.d_th", Num(seg.d_th)},
      {"seg.kappa_th", Num(seg.kappa_th)},
      {"seg.alpha_deg", Num(seg.alpha_th * 180.0 / std::numbers::pi)},
      {"seg.min_cluster_size", std::to_string(seg.min_cluster_size)},
      {"split.enabled", flag(split_enabled)},
      {"split.seed_res", Num(split.seed_resolution)},
      {"split.voxel_res", Num(split.voxel_resolution)},
      {"box.mode", box_mode == BoxMode::kAabb ? "aabb" : "obb"},
      {"box.padding", Num(box_padding)},
      {"spheres.counts", counts},
      {"margin", Num(margin)},
      {"residue.fallback_aabb", flag(residue_fallback_aabb)},
      {"scene.name", scene_name},
      {"output.scene", output_scene},
      {"output.report", output_report},
  };
}

PipelineConfig PipelineConfig::Parse(std::string_view text) {
  PipelineConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParseError,
                  "config line " + std::to_string(line_no) +
                      ": expected 'key = value'");
    }
    try {
      config.Set(Trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError,
                  "config line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return config;
}

PipelineConfig PipelineConfig::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Parse(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

SegmentedCloud SegmentCloud(const PipelineConfig& config,
                            const PointCloud& cloud) {
  config.Validate();
  SegmentedCloud out;
  PointCloud cropped = Staged("crop", [&] {
    PointCloud c = crop_to_workspace(cloud, config.workspace);
    if (c.empty()) {
      throw Error(ErrorCode::kEmptyInput, "no points inside the workspace");
    }
    return c;
  });
  if (config.sor_enabled) {
    auto [kept, report] = Staged("sor", [&] {
      return statistical_outlier_removal(cropped, config.sor);
    });
    out.filtered = std::move(kept);
    out.sor_removed = report.removed;
  } else {
    out.filtered = std::move(cropped);
  }
  const Segmentation seg =
      Staged("segment", [&] { return region_growing(out.filtered, config.seg); });
  out.clusters = seg.clusters.size();
  out.residue = seg.residue;
  Staged("split", [&] {
    for (const Cluster& c : seg.clusters) {
      if (!config.split_enabled) {
        out.pieces.push_back(c);
        continue;
      }
      for (Cluster& piece : split_cluster(c, out.filtered, config.split)) {
        out.pieces.push_back(std::move(piece));
      }
    }
    return 0;
  });
  return out;
}

PipelineResult run_pipeline(const PipelineConfig& config,
                            const PointCloud& cloud) {
  SegmentedCloud segmented = SegmentCloud(config, cloud);
  PipelineResult result;
  PipelineReport& report = result.report;
  report.input_points = cloud.size();
  report.duplicate_points = cloud.DuplicateCount();
  report.cropped_points = segmented.filtered.size() + segmented.sor_removed;
  report.sor_removed = segmented.sor_removed;
  report.clusters = segmented.clusters;
  report.subclusters = segmented.pieces.size();
  report.residue_points = segmented.residue.size();

  const Vec3 pad{config.box_padding, config.box_padding, config.box_padding};
  const auto fit = [&](std::span<const Point3> pts) {
    Obb box = config.box_mode == BoxMode::kAabb ? Obb::FromAabb(fit_aabb(pts))
                                                : fit_obb(pts);
    box.half_extents += pad;
    return box;
  };

  std::vector<Obb> boxes;
  Staged("bound", [&] {
    for (const Cluster& piece : segmented.pieces) {
      boxes.push_back(fit(Gather(segmented.filtered, piece.indices)));
      report.volume_sources.push_back(piece.indices);
      report.volume_normals.push_back(piece.normal);
    }
    if (config.residue_fallback_aabb && !segmented.residue.empty()) {
      Obb box = Obb::FromAabb(
          fit_aabb(Gather(segmented.filtered, segmented.residue)));
      box.half_extents += pad;
      boxes.push_back(box);
      report.volume_sources.push_back(segmented.residue);
      report.volume_normals.push_back({0.0, 0.0, 0.0});
    }
    return 0;
  });

  CollisionScene& scene = result.scene;
  scene.name = config.scene_name;
  scene.margin.delta = config.margin;
  Staged("cover", [&] {
    for (const Obb& box : boxes) {
      scene.environment.push_back(MakeVolume(box, config.sphere_counts));
    }
    return 0;
  });

  scene.metadata["source"] = config.input_path;
  scene.metadata["timestamp"] = UtcTimestamp();
  for (const auto& [key, value] : config.Entries()) {
    scene.metadata["param." + key] = value;
  }
  scene.metadata["count.input_points"] = std::to_string(report.input_points);
  scene.metadata["count.duplicate_points"] =
      std::to_string(report.duplicate_points);
  scene.metadata["count.cropped_points"] = std::to_string(report.cropped_points);
  scene.metadata["count.sor_removed"] = std::to_string(report.sor_removed);
  scene.metadata["count.clusters"] = std::to_string(report.clusters);
  scene.metadata["count.subclusters"] = std::to_string(report.subclusters);
  scene.metadata["count.residue_points"] = std::to_string(report.residue_points);
  report.filtered = std::move(segmented.filtered);
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  const PointCloud cloud = Staged("load", [&] {
    if (config.input_path.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "input.path is not set");
    }
    const CloudFormat format = config.input_format == "auto"
                                   ? FormatFromPath(config.input_path)
                                   : ParseCloudFormat(config.input_format);
    return load_cloud(config.input_path, format);
  });
  return run_pipeline(config, cloud);
}

std::string PipelineReport::ToText() const {
  std::ostringstream out;
  out << "input_points " << input_points << "\n"
      << "duplicate_points " << duplicate_points << "\n"
      << "cropped_points " << cropped_points << "\n"
      << "sor_removed " << sor_removed << "\n"
      << "clusters " << clusters << "\n"
      << "subclusters " << subclusters << "\n"
      << "residue_points " << residue_points << "\n"
      << "volumes " << volume_sources.size() << "\n";
  return out.str();
}

std::string ClusterDump(const SegmentedCloud& segmented) {
  std::vector<long> label(segmented.filtered.size(), -1);
  for (std::size_t c = 0; c < segmented.pieces.size(); ++c) {
    for (std::size_t i : segmented.pieces[c].indices) {
      label[i] = static_cast<long>(c);
    }
  }
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < segmented.filtered.size(); ++i) {
    const Point3& p = segmented.filtered[i];
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %ld\n", p.x, p.y, p.z,
                  label[i]);
    out += buf;
  }
  return out;
}

}  // namespace obbscene
