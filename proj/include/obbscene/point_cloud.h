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

#ifndef OBBSCENE_POINT_CLOUD_H_
#define OBBSCENE_POINT_CLOUD_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "obbscene/vec3.h"

namespace obbscene {

// Ordered list of finite 3D points expressed in a named reference frame.
class PointCloud {
 public:
  PointCloud() = default;
  // Throws Error(kInvalidArgument) on non-finite coordinates.
  explicit PointCloud(std::vector<Point3> points, std::string frame = "I");

  // Throws Error(kInvalidArgument) on non-finite coordinates.
  void push_back(const Point3& p);
  void reserve(std::size_t n) { points_.reserve(n); }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point3& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point3> points() const { return points_; }
  const std::string& frame() const { return frame_; }

  // Number of points that exactly repeat an earlier point.
  std::size_t DuplicateCount() const;

  // Points at the given indices, in the given order.
  PointCloud Subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<Point3> points_;
  std::string frame_ = "I";
};

// Gathers cloud points for an index list.
std::vector<Point3> Gather(const PointCloud& cloud,
                           std::span<const std::size_t> indices);

}  // namespace obbscene

#endif  // OBBSCENE_POINT_CLOUD_H_
