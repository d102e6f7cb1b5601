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

#include <gtest/gtest.h>

#include <random>

#include "obbscene/error.h"
#include "oracles.h"

namespace obbscene {
namespace {

TEST(CropTest, KeepsClosedBoxInOrder) {
  const PointCloud cloud(
      {{0, 0, 0}, {2, 0, 0}, {1, 1, 1}, {-1, 0, 0}, {0.5, 0.5, 0.5}});
  const PointCloud out = crop_to_workspace(cloud, {{0, 0, 0}, {1, 1, 1}});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], (Point3{0, 0, 0}));
  EXPECT_EQ(out[1], (Point3{1, 1, 1}));
  EXPECT_EQ(out[2], (Point3{0.5, 0.5, 0.5}));
}

TEST(CropTest, InvalidRegionRejected) {
  EXPECT_THROW(crop_to_workspace(PointCloud({{0, 0, 0}}),
                                 {{1, 0, 0}, {0, 1, 1}}),
               Error);
}

TEST(CropTest, EmptyResultAllowed) {
  const PointCloud out = crop_to_workspace(PointCloud({{5, 5, 5}}),
                                           {{0, 0, 0}, {1, 1, 1}});
  EXPECT_TRUE(out.empty());
}

TEST(SorTest, RemovesIsolatedOutlier) {
  std::vector<Point3> pts;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) pts.push_back({0.01 * i, 0.01 * j, 0.0});
  }
  pts.push_back({5, 5, 5});
  const auto [kept, report] =
      statistical_outlier_removal(PointCloud(pts), {8, 2.0});
  ASSERT_FALSE(report.removed_indices.empty());
  EXPECT_EQ(report.removed_indices.back(), 100u);
  EXPECT_EQ(report.kept + report.removed, pts.size());
  EXPECT_EQ(kept.size(), report.kept);
}

TEST(SorTest, RegularRingHasZeroSpread) {
  // Every point of a regular polygon has the same statistic.
  std::vector<Point3> pts;
  for (int i = 0; i < 64; ++i) {
    const double a = 2.0 * 3.141592653589793 * i / 64.0;
    pts.push_back({std::cos(a), std::sin(a), 0.0});
  }
  const auto [kept, report] =
      statistical_outlier_removal(PointCloud(pts), {4, 1.0});
  // Two neighbors one step away, two neighbors two steps away.
  const double step = 3.141592653589793 / 64.0;
  EXPECT_NEAR(report.mean_distance, std::sin(step) + std::sin(2.0 * step),
              1e-12);
  EXPECT_NEAR(report.sigma, 0.0, 1e-12);
}

TEST(SorTest, RequiresMoreThanKPoints) {
  try {
    statistical_outlier_removal(PointCloud({{0, 0, 0}, {1, 0, 0}}), {2, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientPoints);
  }
}

TEST(SorTest, ParamsValidated) {
  const PointCloud cloud({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  EXPECT_THROW(statistical_outlier_removal(cloud, {0, 1.0}), Error);
  EXPECT_THROW(statistical_outlier_removal(cloud, {1, 0.0}), Error);
}

TEST(SorTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 12; ++t) {
    const std::size_t n = 50 + rng() % 400;
    std::vector<Point3> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(testing::RandomVec(rng, -1, 1));
    }
    for (std::size_t k : {1u, 4u, 8u}) {
      for (double u : {0.5, 1.0, 2.0}) {
        const auto [kept, report] =
            statistical_outlier_removal(PointCloud(pts), {k, u});
        EXPECT_EQ(report.removed_indices, testing::BruteSorRemoved(pts, k, u))
            << "n=" << n << " k=" << k << " u=" << u;
      }
    }
  }
}

TEST(SorTest, DuplicatesAreNeighborsAtZero) {
  std::vector<Point3> pts = {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  const auto [kept, report] =
      statistical_outlier_removal(PointCloud(pts), {1, 1.0});
  EXPECT_EQ(report.mean_distances[0], 0.0);
  EXPECT_EQ(report.mean_distances[1], 0.0);
  EXPECT_EQ(report.mean_distances[2], 1.0);
}

}  // namespace
}  // namespace obbscene
