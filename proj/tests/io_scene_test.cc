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

#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "obbscene/cloud_io.h"
#include "obbscene/error.h"
#include "obbscene/scene.h"
#include "oracles.h"

namespace obbscene {
namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

ErrorCode ParseCode(std::string_view text, CloudFormat f) {
  try {
    ParseCloud(text, f);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(CloudIoTest, XyzBasics) {
  const PointCloud c = ParseCloud("0 0 0\n1 2 3", CloudFormat::kXyz);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1], (Point3{1, 2, 3}));
}

TEST(CloudIoTest, CommentsBlankLinesAndExtraColumns) {
  const PointCloud c = ParseCloud(
      "# header\n\n  1 2 3 255 0 0\r\n# more\n4\t5\t6\n", CloudFormat::kXyz);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (Point3{1, 2, 3}));
  EXPECT_EQ(c[1], (Point3{4, 5, 6}));
}

TEST(CloudIoTest, Csv) {
  const PointCloud c =
      ParseCloud("1.5,-2,3e-1\n 4 , 5 , 6\n", CloudFormat::kCsv);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (Point3{1.5, -2, 0.3}));
}

TEST(CloudIoTest, ParseErrorsNameTheLine) {
  try {
    ParseCloud("1 2 3\n# ok\n1 2 x\n", CloudFormat::kXyz);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_EQ(ParseCode("1 2\n", CloudFormat::kXyz), ErrorCode::kParseError);
  EXPECT_EQ(ParseCode("1 2 nan\n", CloudFormat::kXyz), ErrorCode::kParseError);
}

TEST(CloudIoTest, AsciiPly) {
  const std::string ply =
      "ply\nformat ascii 1.0\ncomment test\nelement vertex 3\n"
      "property float x\nproperty float y\nproperty float z\n"
      "property uchar red\nelement face 1\n"
      "property list uchar int vertex_indices\nend_header\n"
      "0 0 0 255\n1 0 0 255\n0 1 0.5 255\n3 0 1 2\n";
  const PointCloud c = ParseCloud(ply, CloudFormat::kPlyAscii);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[2], (Point3{0, 1, 0.5}));
}

TEST(CloudIoTest, PlyPropertyOrderRespected) {
  const std::string ply =
      "ply\nformat ascii 1.0\nelement vertex 1\nproperty float nx\n"
      "property float z\nproperty float y\nproperty float x\nend_header\n"
      "9 3 2 1\n";
  const PointCloud c = ParseCloud(ply, CloudFormat::kPlyAscii);
  EXPECT_EQ(c[0], (Point3{1, 2, 3}));
}

TEST(CloudIoTest, BinaryPlyUnsupported) {
  EXPECT_EQ(ParseCode("ply\nformat binary_little_endian 1.0\nelement vertex "
                      "0\nend_header\n",
                      CloudFormat::kPlyAscii),
            ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(ParseCode("ply\nformat ascii 1.0\nelement vertex 2\nproperty "
                      "float x\nproperty float y\nproperty float z\n"
                      "end_header\n1 2 3\n",
                      CloudFormat::kPlyAscii),
            ErrorCode::kParseError);
}

TEST(CloudIoTest, RoundTripAllFormats) {
  std::mt19937_64 rng(71);
  std::vector<Point3> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(testing::RandomVec(rng, -1e3, 1e3));
  const PointCloud cloud(pts);
  for (CloudFormat f :
       {CloudFormat::kXyz, CloudFormat::kCsv, CloudFormat::kPlyAscii}) {
    const std::string path = TempPath("rt." + std::string(CloudFormatName(f)));
    save_cloud(path, cloud, f);
    const PointCloud back = load_cloud(path, f);
    ASSERT_EQ(back.size(), cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      // Stronger than the 9 significant digits promised: exact.
      EXPECT_EQ(back[i], cloud[i]);
      for (std::size_t a = 0; a < 3; ++a) {
        EXPECT_LE(std::abs(back[i][a] - cloud[i][a]),
                  1e-9 * std::abs(cloud[i][a]));
      }
    }
  }
}

TEST(CloudIoTest, MissingFileAndFormatNames) {
  try {
    load_cloud(TempPath("does_not_exist.xyz"), CloudFormat::kXyz);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
  EXPECT_EQ(FormatFromPath("a/b.ply"), CloudFormat::kPlyAscii);
  EXPECT_EQ(FormatFromPath("b.csv"), CloudFormat::kCsv);
  EXPECT_EQ(ParseCloudFormat("ply-ascii"), CloudFormat::kPlyAscii);
  EXPECT_THROW(ParseCloudFormat("las"), Error);
  EXPECT_THROW(FormatFromPath("noext"), Error);
}

TEST(SceneTest, ExampleSceneDefaults) {
  const CollisionScene scene = generate_example_scene();
  ASSERT_EQ(scene.environment.size(), 6u);
  ASSERT_EQ(scene.robot.size(), 1u);
  for (std::size_t i = 0; i < 6; ++i) {
    const Obb& b = scene.environment[i].obb;
    EXPECT_NEAR(b.center.y, -1.0 + 0.4 * static_cast<double>(i), 1e-12);
    EXPECT_EQ(b.center.x, 0.5);
    EXPECT_EQ(b.half_extents, (Vec3{0.2, 0.2, 0.2}));
    EXPECT_EQ(scene.environment[i].spheres.size(), 3u);
    EXPECT_EQ(scene.environment[i].spheres.at(6).spheres.size(), 6u);
  }
  EXPECT_EQ(constraint_count(scene.robot.size(), scene.environment.size(), 1),
            6u);
  EXPECT_EQ(constraint_count(scene.robot[0].spheres.at(6).spheres.size(),
                             scene.environment[0].spheres.at(6).spheres.size(),
                             1),
            36u);
}

TEST(SceneTest, ExampleSceneSingleObstacleAndValidation) {
  ExampleSceneParams p;
  p.n_obstacles = 1;
  EXPECT_EQ(generate_example_scene(p).environment.size(), 1u);
  p.n_obstacles = 0;
  EXPECT_THROW(generate_example_scene(p), Error);
}

TEST(SceneTest, JsonRoundTripIsFieldExactAfterQuantization) {
  std::mt19937_64 rng(72);
  CollisionScene scene;
  scene.name = "random";
  scene.metadata = {{"a", "1"}, {"timestamp", "now"}};
  scene.margin.delta = 0.01;
  for (int i = 0; i < 5; ++i) {
    scene.environment.push_back(
        MakeVolume(testing::RandomBox(rng, 3.0, 0.1, 1.0), {1, 2, 6}));
  }
  scene.robot.push_back(MakeVolume(testing::RandomBox(rng, 3.0, 0.1, 1.0), {}));
  const std::string text = SceneToJson(scene);
  const CollisionScene back = SceneFromJson(text);
  EXPECT_EQ(back, QuantizeScene(scene));
  EXPECT_EQ(SceneToJson(back), text);
  EXPECT_EQ(SceneFromJson(SceneToJson(back)), back);
}

TEST(SceneTest, TwelveSignificantDigits) {
  CollisionScene scene;
  scene.name = "digits";
  Obb b;
  b.center = {1.0 / 3.0, 0, 0};
  b.half_extents = {1, 1, 1};
  scene.environment.push_back(MakeVolume(b, {}));
  const std::string text = SceneToJson(scene);
  EXPECT_NE(text.find("0.333333333333"), std::string::npos);
  EXPECT_EQ(text.find("0.3333333333333"), std::string::npos);
  EXPECT_EQ(Quantize(1.0 / 3.0), 0.333333333333);
}

TEST(SceneTest, MalformedJsonRejected) {
  const auto code = [](const std::string& text) {
    try {
      SceneFromJson(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code("{"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"name": "x"})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"name": "x", "environment": [{"obb": {"center": [0,0,0],
      "rotation": [1,0,0,0,1,0,0,0,-1], "half_extents": [1,1,1]}}],
      "robot": []})"),
            ErrorCode::kParseError);
}

TEST(SceneTest, SaveLoadFile) {
  const CollisionScene scene = generate_example_scene();
  const std::string path = TempPath("scene.json");
  save_scene(path, scene);
  EXPECT_EQ(load_scene(path), QuantizeScene(scene));
}

TEST(SceneTest, VolumeFiles) {
  const VolumeFile box = ParseVolume(
      R"({"obb": {"center": [1,2,3], "rotation": [1,0,0,0,1,0,0,0,1],
          "half_extents": [0.5,0.5,0.5]}})");
  ASSERT_TRUE(box.obb.has_value());
  EXPECT_EQ(box.polytope.size(), 8u);
  const VolumeFile poly = ParseVolume(R"({"vertices": [[0,0,0],[1,0,0]]})");
  EXPECT_FALSE(poly.obb.has_value());
  EXPECT_EQ(poly.polytope.size(), 2u);
  EXPECT_THROW(ParseVolume(R"({"vertices": []})"), Error);
}

TEST(SweepTest, DenseRowsAscendingAndHeader) {
  const CollisionScene scene = generate_example_scene();
  SweepSpec spec;
  spec.moving = scene.robot[0].obb;
  const SweepTable table = run_sweep(scene, spec, {1, 2, 6});
  EXPECT_EQ(table.rows.size(), 201u);
  EXPECT_EQ(spec.SampleCount(), 201u);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    EXPECT_LT(table.rows[i - 1].y, table.rows[i].y);
  }
  const std::string csv = table.ToCsv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "y,dist_gjk,dist_sphere_N1,dist_sphere_N2,dist_sphere_N6");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 202);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(SweepTest, RowCountFormula) {
  SweepSpec spec;
  spec.moving.half_extents = {0.1, 0.1, 0.1};
  spec.y_min = 0.0;
  spec.y_max = 1.0;
  spec.step = 0.3;
  EXPECT_EQ(spec.SampleCount(), 4u);
  spec.step = 0.1;
  EXPECT_EQ(spec.SampleCount(), 11u);
  spec.step = 0.0;
  EXPECT_THROW(spec.Validate(), Error);
  spec.step = 0.1;
  spec.y_max = -1.0;
  EXPECT_THROW(spec.Validate(), Error);
}

TEST(SweepTest, FarFromObstaclesMatchesAnalyticDistance) {
  const CollisionScene scene = generate_example_scene();
  SweepSpec spec;
  spec.moving = scene.robot[0].obb;
  spec.y_min = 3.0;
  spec.y_max = 4.0;
  spec.step = 0.25;
  const SweepTable table = run_sweep(scene, spec, {1});
  for (const SweepRow& row : table.rows) {
    // Nearest obstacle centered at (0.5, 1.0); both cubes have half side 0.2.
    const double dx = 0.5 - 0.4, dy = row.y - 1.0 - 0.4;
    EXPECT_NEAR(row.dist_gjk, std::hypot(dx, dy), 1e-9);
    double oracle = INFINITY;
    for (const SceneVolume& v : scene.environment) {
      oracle = std::min(
          oracle, testing::BoxDistance(spec.moving.Translated({0, row.y, 0}),
                                       v.obb));
    }
    EXPECT_NEAR(row.dist_gjk, oracle, 1e-9);
  }
}

TEST(SweepTest, SpheresConservativeAndGapShrinks) {
  const CollisionScene scene = generate_example_scene();
  SweepSpec spec;
  spec.moving = scene.robot[0].obb;
  const SweepTable table = run_sweep(scene, spec, {1, 2, 6});
  std::vector<double> gap(3, -INFINITY);
  for (const SweepRow& row : table.rows) {
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_LE(row.dist_sphere[c], row.dist_gjk + 1e-9);
      gap[c] = std::max(gap[c], row.dist_gjk - row.dist_sphere[c]);
    }
  }
  EXPECT_GT(gap[0], gap[1]);
  EXPECT_GT(gap[1], gap[2]);
}

TEST(SweepTest, MarginShiftsSphereColumns) {
  CollisionScene scene = generate_example_scene();
  SweepSpec spec;
  spec.moving = scene.robot[0].obb;
  spec.step = 0.1;
  const SweepTable base = run_sweep(scene, spec, {2});
  scene.margin.delta = 0.05;
  const SweepTable shifted = run_sweep(scene, spec, {2});
  for (std::size_t i = 0; i < base.rows.size(); ++i) {
    EXPECT_NEAR(shifted.rows[i].dist_sphere[0],
                base.rows[i].dist_sphere[0] - 0.05, 1e-15);
    EXPECT_EQ(shifted.rows[i].dist_gjk, base.rows[i].dist_gjk);
  }
}

TEST(SweepTest, NonConvergenceReportsY) {
  const CollisionScene scene = generate_example_scene();
  SweepSpec spec;
  spec.moving = scene.robot[0].obb;
  spec.moving.rotation = testing::RotationZ(0.3);
  try {
    run_sweep(scene, spec, {1}, {1e-10, 1});
    FAIL();
  } catch (const NonConvergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("y=-1"), std::string::npos)
        << e.what();
  }
}

TEST(SweepTest, EmptySceneRejected) {
  CollisionScene scene;
  SweepSpec spec;
  spec.moving.half_extents = {0.1, 0.1, 0.1};
  EXPECT_THROW(run_sweep(scene, spec, {1}), Error);
}

}  // namespace
}  // namespace obbscene
