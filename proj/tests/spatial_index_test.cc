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

#include <gtest/gtest.h>

#include <random>

#include "obbscene/error.h"
#include "obbscene/neighborhood.h"
#include "oracles.h"

namespace obbscene {
namespace {

TEST(SpatialIndexTest, EmptyCloudRejected) {
  EXPECT_THROW(SpatialIndex(PointCloud{}), Error);
}

TEST(SpatialIndexTest, KBoundsChecked) {
  const SpatialIndex index(PointCloud({{0, 0, 0}, {1, 0, 0}}));
  try {
    index.KNearest({0, 0, 0}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  try {
    index.KNearest({0, 0, 0}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientPoints);
  }
}

TEST(SpatialIndexTest, MatchesBruteForceOnRandomClouds) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 600;
    std::vector<Point3> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(testing::RandomVec(rng, -1, 1));
    }
    const SpatialIndex index{PointCloud(pts)};
    for (int q = 0; q < 25; ++q) {
      const Point3 query = testing::RandomVec(rng, -1.2, 1.2);
      const std::size_t k = 1 + rng() % std::min<std::size_t>(n, 20);
      const auto got = index.KNearest(query, k);
      const auto want = testing::BruteKNearest(pts, query, k);
      ASSERT_EQ(got.size(), k);
      for (std::size_t i = 0; i < k; ++i) {
        EXPECT_EQ(got[i].index, want[i]);
        EXPECT_EQ(got[i].point, pts[want[i]]);
      }
    }
  }
}

TEST(SpatialIndexTest, TiesBrokenByInsertionOrder) {
  // Lattice points with many equal distances plus exact duplicates.
  std::vector<Point3> pts;
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) pts.push_back({double(i), double(j), 0.0});
  }
  pts.push_back({1, 0, 0});
  pts.push_back({0, 1, 0});
  const SpatialIndex index{PointCloud(pts)};
  for (std::size_t k = 1; k <= pts.size(); ++k) {
    const auto got = index.KNearest({0, 0, 0}, k);
    const auto want = testing::BruteKNearest(pts, {0, 0, 0}, k);
    for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(got[i].index, want[i]);
  }
}

TEST(SpatialIndexTest, SelfIsNearestWithDistanceZero) {
  std::mt19937_64 rng(12);
  std::vector<Point3> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(testing::RandomVec(rng, 0, 1));
  const SpatialIndex index{PointCloud(pts)};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto nn = index.KNearest(pts[i], 1);
    EXPECT_EQ(nn[0].index, i);
    EXPECT_EQ(nn[0].distance, 0.0);
  }
}

TEST(SpatialIndexTest, WithinMatchesLinearScan) {
  std::mt19937_64 rng(13);
  std::vector<Point3> pts;
  for (int i = 0; i < 500; ++i) pts.push_back(testing::RandomVec(rng, -1, 1));
  const SpatialIndex index{PointCloud(pts)};
  const Point3 q{0.1, 0.2, -0.3};
  const auto got = index.Within(q, 0.4);
  std::size_t expected = 0;
  for (const Point3& p : pts) expected += Distance(p, q) <= 0.4;
  EXPECT_EQ(got.size(), expected);
  for (std::size_t i = 1; i < got.size(); ++i) {
    EXPECT_LE(got[i - 1].distance, got[i].distance);
  }
}

TEST(SpatialIndexTest, FreeFunctions) {
  const PointCloud cloud({{0, 0, 0}, {2, 0, 0}, {1, 0, 0}});
  const SpatialIndex index = build_index(cloud);
  const auto nn = k_nearest(index, {1.9, 0, 0}, 2);
  EXPECT_EQ(nn[0].index, 1u);
  EXPECT_EQ(nn[1].index, 2u);
}

TEST(MeanNeighborDistanceTest, UnitSpacedLine) {
  const PointCloud cloud({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
  const SpatialIndex index(cloud);
  // Query at a member: itself excluded, neighbors at 1 and 1.
  EXPECT_DOUBLE_EQ(mean_neighbor_distance(index, {1, 0, 0}, 2), 1.0);
  // Query not in the cloud: nothing excluded.
  EXPECT_DOUBLE_EQ(mean_neighbor_distance(index, {1.5, 0, 0}, 2), 0.5);
  EXPECT_DOUBLE_EQ(MeanNeighborDistanceOf(index, 0, 3), 2.0);
}

TEST(MeanNeighborDistanceTest, DuplicatesCountAsZero) {
  const PointCloud cloud({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}});
  const SpatialIndex index(cloud);
  EXPECT_DOUBLE_EQ(MeanNeighborDistanceOf(index, 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(MeanNeighborDistanceOf(index, 1, 2), 0.5);
}

TEST(MeanNeighborDistanceTest, NeedsKOtherPoints) {
  const SpatialIndex index(PointCloud({{0, 0, 0}, {1, 0, 0}}));
  EXPECT_THROW(MeanNeighborDistanceOf(index, 0, 2), Error);
}

}  // namespace
}  // namespace obbscene
