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

#ifndef OBBSCENE_SEGMENTATION_H_
#define OBBSCENE_SEGMENTATION_H_

#include <cstddef>
#include <numbers>
#include <vector>

#include "obbscene/point_cloud.h"
#include "obbscene/vec3.h"

namespace obbscene {

struct SegmentationParams {
  std::size_t k = 10;          // neighborhood size for normals and growth
  double d_th = 0.05;          // neighbors at or beyond this never link, m
  double kappa_th = 0.05;      // admission requires curvature <= kappa_th
  double alpha_th = 10.0 * std::numbers::pi / 180.0;  // normal angle, rad
  std::size_t min_cluster_size = 10;

  void Validate() const;
};

struct Cluster {
  std::vector<std::size_t> indices;  // ascending, into the source cloud
  Point3 centroid;
  Vec3 normal;  // unit, sign-canonical
  double curvature = 0.0;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Segmentation {
  std::vector<Cluster> clusters;
  // Points that failed admission, had degenerate neighborhoods, or fell in
  // groups smaller than min_cluster_size. Ascending.
  std::vector<std::size_t> residue;
};

struct SplitParams {
  double seed_resolution = 0.5;   // seed cell edge length, m
  double voxel_resolution = 0.05; // occupancy voxel edge length, m

  void Validate() const;
};

// Region growing. Seeds are taken in ascending curvature order (index breaks
// ties). From each seed, a breadth-first growth admits a k-neighbor j of an
// already admitted point q when |p_j - p_q| < d_th, curvature(j) <= kappa_th
// and acos|<n_q, n_j>| <= alpha_th. Normals and curvatures come from the
// covariance of each point with its k nearest neighbors.
Segmentation region_growing(const PointCloud& cloud,
                            const SegmentationParams& params);

// Minimum distance between any point of `a` and any point of `b`.
double cluster_separation(const Cluster& a, const Cluster& b,
                          const PointCloud& cloud);

// Splits a cluster into spatially bounded pieces: points are binned into
// seed cells of edge seed_resolution anchored at the cluster's AABB minimum.
// Cells covering fewer than round(seed/voxel) occupied voxels are merged into
// the nearest viable cell (by centroid) when the merged extent stays within
// 2 * seed_resolution on every axis. The pieces partition the input.
std::vector<Cluster> split_cluster(const Cluster& cluster,
                                   const PointCloud& cloud,
                                   const SplitParams& params);

// Builds a cluster from indices: centroid from the points, normal and
// curvature from their covariance, or `fallback` values if it is degenerate.
Cluster MakeCluster(std::vector<std::size_t> indices, const PointCloud& cloud,
                    const Vec3& fallback_normal = {0.0, 0.0, 1.0},
                    double fallback_curvature = 0.0);

}  // namespace obbscene

#endif  // OBBSCENE_SEGMENTATION_H_
