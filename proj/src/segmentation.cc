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

#include "obbscene/segmentation.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "obbscene/error.h"
#include "obbscene/neighborhood.h"
#include "obbscene/simd/kernels.h"
#include "obbscene/spatial_index.h"

namespace obbscene {
namespace {

struct PointSurface {
  bool valid = false;
  Vec3 normal;
  double curvature = 0.0;
};

}  // namespace

void SegmentationParams::Validate() const {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "seg.k must be >= 1");
  if (!(d_th > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "seg.d_th must be > 0");
  }
  if (!(kappa_th > 0.0 && kappa_th <= 1.0 / 3.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "seg.kappa_th must lie in (0, 1/3]");
  }
  if (!(alpha_th > 0.0 && alpha_th <= std::numbers::pi / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "seg.alpha_th must lie in (0, pi/2]");
  }
  if (min_cluster_size < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "seg.min_cluster_size must be >= 1");
  }
}

void SplitParams::Validate() const {
  if (!(voxel_resolution > 0.0) || !(seed_resolution >= voxel_resolution) ||
      !std::isfinite(seed_resolution)) {
    throw Error(ErrorCode::kInvalidArgument,
                "split requires seed_resolution >= voxel_resolution > 0");
  }
}

Cluster MakeCluster(std::vector<std::size_t> indices, const PointCloud& cloud,
                    const Vec3& fallback_normal, double fallback_curvature) {
  if (indices.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cluster must have members");
  }
  Cluster c;
  c.indices = std::move(indices);
  const std::vector<Point3> pts = Gather(cloud, c.indices);
  c.centroid = Centroid(pts);
  c.normal = fallback_normal;
  c.curvature = fallback_curvature;
  try {
    const SurfaceEstimate s = EstimateSurface(pts);
    c.normal = s.normal;
    c.curvature = s.curvature;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateNeighborhood) throw;
  }
  return c;
}

Segmentation region_growing(const PointCloud& cloud,
                            const SegmentationParams& params) {
  params.Validate();
  const std::size_t n = cloud.size();
  Segmentation out;
  if (n < 3 || n < params.min_cluster_size) {
    out.residue.resize(n);
    std::iota(out.residue.begin(), out.residue.end(), std::size_t{0});
    return out;
  }

  const SpatialIndex index(cloud);
  const std::size_t k = std::min(params.k, n - 1);

  // Per-point k-neighborhood (self excluded) and local surface.
  std::vector<std::vector<Neighbor>> neighbors(n);
  std::vector<PointSurface> surface(n);
  std::vector<Point3> patch;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Neighbor> nn = index.KNearest(cloud[i], k + 1);
    auto self = std::find_if(nn.begin(), nn.end(),
                             [i](const Neighbor& m) { return m.index == i; });
    nn.erase(self != nn.end() ? self : nn.end() - 1);
    patch.clear();
    patch.push_back(cloud[i]);
    for (const Neighbor& m : nn) patch.push_back(m.point);
    try {
      const SurfaceEstimate s = EstimateSurface(patch);
      surface[i] = {true, s.normal, s.curvature};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateNeighborhood) throw;
    }
    neighbors[i] = std::move(nn);
  }

  std::vector<std::size_t> seeds;
  seeds.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (surface[i].valid) seeds.push_back(i);
  }
  std::stable_sort(seeds.begin(), seeds.end(),
                   [&](std::size_t a, std::size_t b) {
                     return surface[a].curvature < surface[b].curvature;
                   });

  std::vector<bool> taken(n, false);
  std::vector<bool> clustered(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t seed : seeds) {
    if (taken[seed]) continue;
    // Seeds are sorted by curvature, so no later seed can be admitted.
    if (surface[seed].curvature > params.kappa_th) break;

    std::vector<std::size_t> members = {seed};
    taken[seed] = true;
    queue.assign(1, seed);
    while (!queue.empty()) {
      const std::size_t q = queue.front();
      queue.pop_front();
      for (const Neighbor& m : neighbors[q]) {
        const std::size_t j = m.index;
        if (taken[j] || !(m.distance < params.d_th) || !surface[j].valid ||
            surface[j].curvature > params.kappa_th) {
          continue;
        }
        const double c =
            std::min(1.0, std::abs(Dot(surface[q].normal, surface[j].normal)));
        if (std::acos(c) > params.alpha_th) continue;
        taken[j] = true;
        members.push_back(j);
        queue.push_back(j);
      }
    }
    if (members.size() < params.min_cluster_size) continue;

    std::sort(members.begin(), members.end());
    Cluster cluster;
    const Vec3 reference = surface[seed].normal;
    Vec3 normal_sum;
    double curvature_sum = 0.0;
    for (std::size_t i : members) {
      const Vec3& nrm = surface[i].normal;
      normal_sum += Dot(nrm, reference) < 0.0 ? -nrm : nrm;
      curvature_sum += surface[i].curvature;
      clustered[i] = true;
    }
    cluster.normal = CanonicalizeSign(Normalized(normal_sum));
    cluster.curvature = curvature_sum / static_cast<double>(members.size());
    cluster.centroid = Centroid(Gather(cloud, members));
    cluster.indices = std::move(members);
    out.clusters.push_back(std::move(cluster));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!clustered[i]) out.residue.push_back(i);
  }
  return out;
}

double cluster_separation(const Cluster& a, const Cluster& b,
                          const PointCloud& cloud) {
  if (a.indices.empty() || b.indices.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cluster separation of empty cluster");
  }
  const simd::PointsSoa soa_b(Gather(cloud, b.indices));
  std::vector<double> d2(soa_b.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i : a.indices) {
    simd::SquaredDistances(soa_b.view(), cloud[i], d2);
    best = std::min(best, *std::min_element(d2.begin(), d2.end()));
  }
  return std::sqrt(best);
}

namespace {

using CellKey = std::array<std::int64_t, 3>;

struct Cell {
  CellKey key;
  std::vector<std::size_t> members;
  Vec3 lo;
  Vec3 hi;
  Point3 centroid;
  bool viable = false;
  int merged_into = -1;
};

}  // namespace

std::vector<Cluster> split_cluster(const Cluster& cluster,
                                   const PointCloud& cloud,
                                   const SplitParams& params) {
  params.Validate();
  if (cluster.indices.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot split an empty cluster");
  }
  const double seed = params.seed_resolution;
  Vec3 lo = cloud[cluster.indices.front()];
  Vec3 hi = lo;
  for (std::size_t i : cluster.indices) {
    lo = Min(lo, cloud[i]);
    hi = Max(hi, cloud[i]);
  }
  std::array<std::int64_t, 3> cells_per_axis{};
  for (std::size_t a = 0; a < 3; ++a) {
    cells_per_axis[a] = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil((hi[a] - lo[a]) / seed)));
  }
  if (cells_per_axis == std::array<std::int64_t, 3>{1, 1, 1}) return {cluster};

  const auto bin = [&](const Point3& p, double size,
                       const std::array<std::int64_t, 3>& limit) {
    CellKey key{};
    for (std::size_t a = 0; a < 3; ++a) {
      const auto raw = static_cast<std::int64_t>(std::floor((p[a] - lo[a]) / size));
      key[a] = std::clamp<std::int64_t>(raw, 0, limit[a] - 1);
    }
    return key;
  };

  std::map<CellKey, std::size_t> cell_of_key;
  std::vector<Cell> cells;
  for (std::size_t i : cluster.indices) {
    const CellKey key = bin(cloud[i], seed, cells_per_axis);
    auto [it, inserted] = cell_of_key.try_emplace(key, cells.size());
    if (inserted) {
      cells.push_back({key, {}, cloud[i], cloud[i], {}, false, -1});
    }
    Cell& cell = cells[it->second];
    cell.members.push_back(i);
    cell.lo = Min(cell.lo, cloud[i]);
    cell.hi = Max(cell.hi, cloud[i]);
  }
  // Process cells in key order.
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.key < b.key; });

  const auto min_voxels = static_cast<std::size_t>(
      std::max(1.0, std::round(seed / params.voxel_resolution)));
  const std::array<std::int64_t, 3> no_limit = {
      std::numeric_limits<std::int64_t>::max(),
      std::numeric_limits<std::int64_t>::max(),
      std::numeric_limits<std::int64_t>::max()};
  for (Cell& cell : cells) {
    std::set<CellKey> voxels;
    for (std::size_t i : cell.members) {
      voxels.insert(bin(cloud[i], params.voxel_resolution, no_limit));
    }
    cell.viable = voxels.size() >= min_voxels;
    cell.centroid = Centroid(Gather(cloud, cell.members));
  }

  // Merge non-viable cells into the nearest viable cell that stays bounded.
  const double max_extent = 2.0 * seed;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].viable) continue;
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < cells.size(); ++t) {
      if (!cells[t].viable) continue;
      const Vec3 merged_lo = Min(cells[t].lo, cells[c].lo);
      const Vec3 merged_hi = Max(cells[t].hi, cells[c].hi);
      const Vec3 extent = merged_hi - merged_lo;
      if (extent.x > max_extent || extent.y > max_extent ||
          extent.z > max_extent) {
        continue;
      }
      const double d2 = SquaredDistance(cells[t].centroid, cells[c].centroid);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = static_cast<int>(t);
      }
    }
    if (best < 0) continue;
    Cell& target = cells[best];
    target.lo = Min(target.lo, cells[c].lo);
    target.hi = Max(target.hi, cells[c].hi);
    target.members.insert(target.members.end(), cells[c].members.begin(),
                          cells[c].members.end());
    cells[c].merged_into = best;
  }

  std::vector<Cluster> pieces;
  for (Cell& cell : cells) {
    if (cell.merged_into >= 0) continue;
    std::sort(cell.members.begin(), cell.members.end());
    pieces.push_back(MakeCluster(std::move(cell.members), cloud,
                                 cluster.normal, cluster.curvature));
  }
  return pieces;
}

}  // namespace obbscene
