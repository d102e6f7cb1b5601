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

#include "obbscene/neighborhood.h"

#include <algorithm>
#include <string>
#include <vector>

#include "obbscene/error.h"
#include "obbscene/simd/kernels.h"

namespace obbscene {
namespace {

constexpr double kDegenerateRatio = 1e-12;

double MeanOf(const std::vector<Neighbor>& neighbors, std::size_t skip,
              std::size_t k) {
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < neighbors.size() && used < k; ++i) {
    if (i == skip) continue;
    sum += neighbors[i].distance;
    ++used;
  }
  return sum / static_cast<double>(k);
}

void RequireOthers(const SpatialIndex& index, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (index.size() < k + 1) {
    throw Error(ErrorCode::kInsufficientPoints,
                "need " + std::to_string(k) + " neighbors besides the point, "
                "cloud has " + std::to_string(index.size()) + " points");
  }
}

}  // namespace

double mean_neighbor_distance(const SpatialIndex& index, const Point3& point,
                              std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (index.size() < k) {
    throw Error(ErrorCode::kInsufficientPoints,
                "fewer than " + std::to_string(k) + " points in the cloud");
  }
  const std::size_t fetch = std::min(k + 1, index.size());
  const std::vector<Neighbor> nn = index.KNearest(point, fetch);
  const bool is_member = nn.front().distance == 0.0;
  if (is_member) {
    RequireOthers(index, k);
    return MeanOf(nn, 0, k);
  }
  return MeanOf(nn, nn.size(), k);
}

double MeanNeighborDistanceOf(const SpatialIndex& index, std::size_t member,
                              std::size_t k) {
  RequireOthers(index, k);
  const std::vector<Neighbor> nn = index.KNearest(index.point(member), k + 1);
  std::size_t skip = nn.size() - 1;  // member not among them: drop the last
  for (std::size_t i = 0; i < nn.size(); ++i) {
    if (nn[i].index == member) {
      skip = i;
      break;
    }
  }
  return MeanOf(nn, skip, k);
}

Point3 Centroid(std::span<const Point3> points) {
  if (points.empty()) {
    throw Error(ErrorCode::kEmptyInput, "centroid of an empty point set");
  }
  Vec3 sum;
  for (const Point3& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

SymMat3 covariance(std::span<const Point3> points) {
  if (points.empty()) {
    throw Error(ErrorCode::kEmptyInput, "covariance of an empty point set");
  }
  const Point3 mean = Centroid(points);
  const simd::PointsSoa soa(points);
  SymMat3 s = simd::CentralMomentSums(soa.view(), mean);
  const double inv = 1.0 / static_cast<double>(points.size());
  s.xx *= inv;
  s.xy *= inv;
  s.xz *= inv;
  s.yy *= inv;
  s.yz *= inv;
  s.zz *= inv;
  return s;
}

double curvature(const EigenBasis& basis) {
  const double l1 = std::max(basis.values[0], 0.0);
  const double trace = l1 + std::max(basis.values[1], 0.0) +
                       std::max(basis.values[2], 0.0);
  if (!(trace > 0.0)) {
    throw Error(ErrorCode::kDegenerateNeighborhood,
                "curvature undefined for zero-trace covariance");
  }
  return std::clamp(l1 / trace, 0.0, 1.0 / 3.0);
}

SurfaceEstimate EstimateSurface(std::span<const Point3> neighborhood) {
  if (neighborhood.size() < 3) {
    throw Error(ErrorCode::kDegenerateNeighborhood,
                "surface estimate needs at least 3 points");
  }
  const EigenBasis basis = eigen_sym3(covariance(neighborhood));
  if (basis.values[1] < kDegenerateRatio * std::max(basis.values[2], 1.0)) {
    throw Error(ErrorCode::kDegenerateNeighborhood,
                "neighborhood is collinear or coincident");
  }
  return {basis.vectors[0], curvature(basis)};
}

Vec3 surface_normal(std::span<const Point3> neighborhood) {
  return EstimateSurface(neighborhood).normal;
}

}  // namespace obbscene
