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

#ifndef OBBSCENE_NEIGHBORHOOD_H_
#define OBBSCENE_NEIGHBORHOOD_H_

#include <cstddef>
#include <span>

#include "obbscene/spatial_index.h"
#include "obbscene/sym_eigen.h"
#include "obbscene/vec3.h"

namespace obbscene {

// Mean Euclidean distance from `point` to its k nearest neighbors. When the
// point coincides with a cloud member, one coincident member (the earliest
// inserted) is treated as the point itself and excluded.
// Throws Error(kInsufficientPoints) when fewer than k other points exist.
double mean_neighbor_distance(const SpatialIndex& index, const Point3& point,
                              std::size_t k);

// Same statistic for the cloud member at `member`, excluding exactly that
// member. Coincident duplicates of it count as neighbors at distance 0.
double MeanNeighborDistanceOf(const SpatialIndex& index, std::size_t member,
                              std::size_t k);

Point3 Centroid(std::span<const Point3> points);

// Population covariance (1/n) sum (p - mean)(p - mean)^T.
// Throws Error(kEmptyInput) for no points.
SymMat3 covariance(std::span<const Point3> points);

// Unit eigenvector of the smallest covariance eigenvalue, sign-canonical.
// Throws Error(kDegenerateNeighborhood) for fewer than 3 points or when
// lambda_2 < 1e-12 * max(lambda_3, 1) (collinear or coincident points).
Vec3 surface_normal(std::span<const Point3> neighborhood);

// lambda_1 / (lambda_1 + lambda_2 + lambda_3), clamped to [0, 1/3].
// Throws Error(kDegenerateNeighborhood) for a zero trace.
double curvature(const EigenBasis& basis);

struct SurfaceEstimate {
  Vec3 normal;
  double curvature = 0.0;
};

// Normal and curvature from a single eigen solve.
SurfaceEstimate EstimateSurface(std::span<const Point3> neighborhood);

}  // namespace obbscene

#endif  // OBBSCENE_NEIGHBORHOOD_H_
