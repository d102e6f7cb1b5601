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

#ifndef OBBSCENE_PREPROCESS_H_
#define OBBSCENE_PREPROCESS_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "obbscene/point_cloud.h"
#include "obbscene/vec3.h"

namespace obbscene {

// Closed axis-aligned box standing in for the robot's reachable space.
struct WorkspaceRegion {
  Point3 min;
  Point3 max;

  // Throws Error(kInvalidArgument) unless min <= max componentwise.
  void Validate() const;
  bool Contains(const Point3& p) const;
};

struct SorParams {
  std::size_t k = 8;  // neighborhood size
  double u = 1.0;     // denoising coefficient: band is mean +- u * sigma

  void Validate() const;
};

struct FilterReport {
  std::size_t kept = 0;
  std::size_t removed = 0;
  double mean_distance = 0.0;  // mean of all d_i
  double sigma = 0.0;          // population standard deviation of all d_i
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::vector<std::size_t> removed_indices;  // ascending
  std::vector<double> mean_distances;        // d_i for every input point
};

// Points inside or on the boundary of the region, in input order.
PointCloud crop_to_workspace(const PointCloud& cloud,
                             const WorkspaceRegion& region);

// Statistical outlier removal. Each point's mean distance to its k nearest
// other points is compared against the cloud-wide band
// [mean - u*sigma, mean + u*sigma]; points outside are removed.
// Throws Error(kInsufficientPoints) unless cloud.size() > k.
std::pair<PointCloud, FilterReport> statistical_outlier_removal(
    const PointCloud& cloud, const SorParams& params);

}  // namespace obbscene

#endif  // OBBSCENE_PREPROCESS_H_
