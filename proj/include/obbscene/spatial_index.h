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

#ifndef OBBSCENE_SPATIAL_INDEX_H_
#define OBBSCENE_SPATIAL_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "obbscene/point_cloud.h"
#include "obbscene/simd/kernels.h"
#include "obbscene/vec3.h"

namespace obbscene {

struct Neighbor {
  std::size_t index = 0;  // position in the source cloud
  Point3 point;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Immutable kd-tree over a snapshot of a point cloud. Results are exact and
// ordered by (distance, insertion index), so they coincide with a linear
// scan. Concurrent queries are safe.
class SpatialIndex {
 public:
  // Throws Error(kEmptyInput) for an empty cloud.
  explicit SpatialIndex(const PointCloud& cloud);

  std::size_t size() const { return source_.size(); }
  const Point3& point(std::size_t i) const { return source_[i]; }

  // The k nearest points to q. Throws Error(kInvalidArgument) for k == 0 and
  // Error(kInsufficientPoints) for k > size().
  std::vector<Neighbor> KNearest(const Point3& q, std::size_t k) const;

  // Every point with distance <= radius, in (distance, index) order.
  std::vector<Neighbor> Within(const Point3& q, double radius) const;

 private:
  struct Node {
    Vec3 lo;
    Vec3 hi;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;  // -1 for leaves
    std::int32_t right = -1;
  };

  std::int32_t BuildNode(std::uint32_t begin, std::uint32_t end);
  void CollectWithin(std::int32_t node, const Point3& q, double radius_sq,
                     std::vector<Neighbor>& out) const;

  std::vector<Point3> source_;
  std::vector<std::size_t> order_;  // tree slot -> source index
  simd::PointsSoa slots_;           // points in tree-slot order
  std::vector<Node> nodes_;
};

// Free-function spellings of the index operations.
SpatialIndex build_index(const PointCloud& cloud);
std::vector<Neighbor> k_nearest(const SpatialIndex& index, const Point3& query,
                                std::size_t k);

}  // namespace obbscene

#endif  // OBBSCENE_SPATIAL_INDEX_H_
