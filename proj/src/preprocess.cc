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

#include "obbscene/preprocess.h"

#include <cmath>
#include <cstdint>
#include <string>

#include "obbscene/error.h"
#include "obbscene/neighborhood.h"
#include "obbscene/simd/kernels.h"
#include "obbscene/spatial_index.h"

namespace obbscene {

void WorkspaceRegion::Validate() const {
  if (!IsFinite(min) || !IsFinite(max) || min.x > max.x || min.y > max.y ||
      min.z > max.z) {
    throw Error(ErrorCode::kInvalidArgument,
                "workspace region requires finite min <= max componentwise");
  }
}

bool WorkspaceRegion::Contains(const Point3& p) const {
  return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
         p.z >= min.z && p.z <= max.z;
}

void SorParams::Validate() const {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "sor.k must be >= 1");
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw Error(ErrorCode::kInvalidArgument, "sor.u must be > 0");
  }
}

PointCloud crop_to_workspace(const PointCloud& cloud,
                             const WorkspaceRegion& region) {
  region.Validate();
  const simd::PointsSoa soa(cloud.points());
  std::vector<std::uint8_t> inside(cloud.size());
  simd::InsideBoxMask(soa.view(), region.min, region.max, inside);
  std::vector<std::size_t> kept;
  kept.reserve(cloud.size());
  for (std::size_t i = 0; i < inside.size(); ++i) {
    if (inside[i]) kept.push_back(i);
  }
  return cloud.Subset(kept);
}

std::pair<PointCloud, FilterReport> statistical_outlier_removal(
    const PointCloud& cloud, const SorParams& params) {
  params.Validate();
  if (cloud.size() <= params.k) {
    throw Error(ErrorCode::kInsufficientPoints,
                "outlier removal with k = " + std::to_string(params.k) +
                    " needs more than k points, got " +
                    std::to_string(cloud.size()));
  }
  const SpatialIndex index(cloud);
  const std::size_t n = cloud.size();

  FilterReport report;
  report.mean_distances.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    report.mean_distances[i] = MeanNeighborDistanceOf(index, i, params.k);
  }

  double sum = 0.0;
  for (double d : report.mean_distances) sum += d;
  report.mean_distance = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double d : report.mean_distances) {
    const double e = d - report.mean_distance;
    sq += e * e;
  }
  report.sigma = std::sqrt(sq / static_cast<double>(n));
  report.lower_bound = report.mean_distance - params.u * report.sigma;
  report.upper_bound = report.mean_distance + params.u * report.sigma;

  std::vector<std::size_t> kept;
  kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = report.mean_distances[i];
    if (d < report.lower_bound || d > report.upper_bound) {
      report.removed_indices.push_back(i);
    } else {
      kept.push_back(i);
    }
  }
  report.kept = kept.size();
  report.removed = report.removed_indices.size();
  return {cloud.Subset(kept), std::move(report)};
}

}  // namespace obbscene
