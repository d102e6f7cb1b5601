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

#include "obbscene/point_cloud.h"

#include <algorithm>
#include <tuple>

#include "obbscene/error.h"

namespace obbscene {
namespace {

void CheckFinite(const Point3& p) {
  if (!IsFinite(p)) {
    throw Error(ErrorCode::kInvalidArgument,
                "point coordinates must be finite");
  }
}

}  // namespace

PointCloud::PointCloud(std::vector<Point3> points, std::string frame)
    : points_(std::move(points)), frame_(std::move(frame)) {
  for (const Point3& p : points_) CheckFinite(p);
}

void PointCloud::push_back(const Point3& p) {
  CheckFinite(p);
  points_.push_back(p);
}

std::size_t PointCloud::DuplicateCount() const {
  std::vector<Point3> sorted = points_;
  std::sort(sorted.begin(), sorted.end(), [](const Point3& a, const Point3& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
  });
  std::size_t dups = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) ++dups;
  }
  return dups;
}

PointCloud PointCloud::Subset(std::span<const std::size_t> indices) const {
  PointCloud out;
  out.frame_ = frame_;
  out.points_ = Gather(*this, indices);
  return out;
}

std::vector<Point3> Gather(const PointCloud& cloud,
                           std::span<const std::size_t> indices) {
  std::vector<Point3> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(cloud[i]);
  return out;
}

}  // namespace obbscene
