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

#include "obbscene/spatial_index.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "obbscene/error.h"

namespace obbscene {
namespace {

constexpr std::uint32_t kLeafSize = 16;

double BoxSquaredDistance(const Vec3& lo, const Vec3& hi, const Point3& q) {
  double d2 = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    double d = 0.0;
    if (q[a] < lo[a]) {
      d = lo[a] - q[a];
    } else if (q[a] > hi[a]) {
      d = q[a] - hi[a];
    }
    d2 += d * d;
  }
  return d2;
}

// (squared distance, source index); lexicographic order is the result order.
using Candidate = std::pair<double, std::size_t>;

}  // namespace

SpatialIndex::SpatialIndex(const PointCloud& cloud)
    : source_(cloud.points().begin(), cloud.points().end()) {
  if (source_.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot index an empty point cloud");
  }
  if (source_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "point cloud too large to index");
  }
  order_.resize(source_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  nodes_.reserve(2 * (source_.size() / kLeafSize + 1));
  BuildNode(0, static_cast<std::uint32_t>(source_.size()));
  slots_.reserve(source_.size());
  for (std::size_t i : order_) slots_.push_back(source_[i]);
}

std::int32_t SpatialIndex::BuildNode(std::uint32_t begin, std::uint32_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo = node.hi = source_[order_[begin]];
  for (std::uint32_t i = begin + 1; i < end; ++i) {
    node.lo = Min(node.lo, source_[order_[i]]);
    node.hi = Max(node.hi, source_[order_[i]]);
  }
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return id;

  const Vec3 extent = node.hi - node.lo;
  std::size_t axis = 0;
  if (extent.y > extent[axis]) axis = 1;
  if (extent.z > extent[axis]) axis = 2;
  if (extent[axis] == 0.0) return id;  // all points coincide

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](std::size_t a, std::size_t b) {
                     const double ca = source_[a][axis];
                     const double cb = source_[b][axis];
                     return ca < cb || (ca == cb && a < b);
                   });
  const std::int32_t left = BuildNode(begin, mid);
  const std::int32_t right = BuildNode(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<Neighbor> SpatialIndex::KNearest(const Point3& q,
                                             std::size_t k) const {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  }
  if (k > size()) {
    throw Error(ErrorCode::kInsufficientPoints,
                "k = " + std::to_string(k) + " exceeds point count " +
                    std::to_string(size()));
  }

  std::priority_queue<Candidate> heap;  // top is the current worst
  std::vector<double> d2(kLeafSize);
  std::vector<std::int32_t> stack = {0};
  // Nodes are pushed with their box distance checked again on pop, since the
  // bound tightens while the stack is processed.
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (heap.size() == k &&
        BoxSquaredDistance(node.lo, node.hi, q) > heap.top().first) {
      continue;
    }
    if (node.left < 0) {
      const std::size_t n = node.end - node.begin;
      if (d2.size() < n) d2.resize(n);
      simd::SquaredDistances(slots_.view(node.begin, node.end), q,
                             std::span<double>(d2.data(), n));
      for (std::size_t i = 0; i < n; ++i) {
        const Candidate c{d2[i], order_[node.begin + i]};
        if (heap.size() < k) {
          heap.push(c);
        } else if (c < heap.top()) {
          heap.pop();
          heap.push(c);
        }
      }
      continue;
    }
    const Node& l = nodes_[node.left];
    const Node& r = nodes_[node.right];
    const double dl = BoxSquaredDistance(l.lo, l.hi, q);
    const double dr = BoxSquaredDistance(r.lo, r.hi, q);
    // Push the farther child first so the nearer one is explored first.
    if (dl <= dr) {
      stack.push_back(node.right);
      stack.push_back(node.left);
    } else {
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }

  std::vector<Neighbor> out(heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    const Candidate& c = heap.top();
    out[i] = {c.second, source_[c.second], std::sqrt(c.first)};
    heap.pop();
  }
  return out;
}

void SpatialIndex::CollectWithin(std::int32_t id, const Point3& q,
                                 double radius_sq,
                                 std::vector<Neighbor>& out) const {
  const Node& node = nodes_[id];
  if (BoxSquaredDistance(node.lo, node.hi, q) > radius_sq) return;
  if (node.left >= 0) {
    CollectWithin(node.left, q, radius_sq, out);
    CollectWithin(node.right, q, radius_sq, out);
    return;
  }
  const std::size_t n = node.end - node.begin;
  std::vector<double> d2(n);
  simd::SquaredDistances(slots_.view(node.begin, node.end), q, d2);
  for (std::size_t i = 0; i < n; ++i) {
    if (d2[i] <= radius_sq) {
      const std::size_t src = order_[node.begin + i];
      // Squared distance is parked in `distance` until the final sort.
      out.push_back({src, source_[src], d2[i]});
    }
  }
}

std::vector<Neighbor> SpatialIndex::Within(const Point3& q,
                                           double radius) const {
  std::vector<Neighbor> out;
  if (!(radius >= 0.0)) return out;
  CollectWithin(0, q, radius * radius, out);
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance ||
           (a.distance == b.distance && a.index < b.index);
  });
  for (Neighbor& n : out) n.distance = std::sqrt(n.distance);
  return out;
}

SpatialIndex build_index(const PointCloud& cloud) { return SpatialIndex(cloud); }

std::vector<Neighbor> k_nearest(const SpatialIndex& index, const Point3& query,
                                std::size_t k) {
  return index.KNearest(query, k);
}

}  // namespace obbscene
