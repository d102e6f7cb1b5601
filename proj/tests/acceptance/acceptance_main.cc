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

// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "obbscene/bounding.h"
#include "obbscene/collision.h"
#include "obbscene/neighborhood.h"
#include "obbscene/pipeline.h"
#include "obbscene/preprocess.h"
#include "obbscene/scene.h"
#include "obbscene/segmentation.h"
#include "obbscene/sym_eigen.h"
#include "oracles.h"

namespace obbscene {
namespace {

namespace t = testing;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

Outcome GjkAgainstOracles() {
  std::mt19937_64 rng(1001);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int boolean_checked = 0, boolean_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Obb a = t::RandomBox(rng, 1.5, 0.1, 1.0);
    const Obb b = t::RandomBox(rng, 1.5, 0.1, 1.0);
    const DistanceResult r =
        gjk_query(obb_to_polytope(a), obb_to_polytope(b));
    const double oracle = t::BoxDistance(a, b);
    worst = std::max(worst, std::abs(r.distance - oracle));
    const bool oracle_overlap = t::BoxesOverlap(a, b);
    if (oracle > 1e-9 || oracle_overlap) {
      ++boolean_checked;
      if (r.colliding != oracle_overlap) ++boolean_bad;
      if (sat_boxes(a, b) == oracle_overlap) ++boolean_bad;
    }
  }
  const double elapsed = Seconds(start);
  return {worst <= 1e-7 && boolean_bad == 0 && elapsed <= 5.0,
          Fmt("max |gjk - oracle| = %.3g, boolean mismatches %d/%d, %.3f s",
              worst, boolean_bad, boolean_checked, elapsed)};
}

Outcome MinkowskiFigure() {
  const auto polygon = [](const std::vector<t::P2>& pts) {
    std::vector<Point3> v;
    for (const t::P2& p : pts) v.push_back({p.x, p.y, 0.0});
    return ConvexPolytope(v);
  };
  const auto hull_of = [](const ConvexPolytope& p) {
    std::vector<t::P2> flat;
    for (const Point3& v : p.vertices()) flat.push_back({v.x, v.y});
    return t::HullVertices2(flat);
  };
  const ConvexPolytope a = polygon({{1, 1}, {1, 4}, {3, 4}, {3, 1}});
  const auto colliding = hull_of(
      minkowski_difference(a, polygon({{0, 2}, {0, 3}, {2, 2}})));
  const auto separated = hull_of(
      minkowski_difference(a, polygon({{0.5, -1}, {0, 2}, {0.5, 3}})));
  const bool ok1 =
      colliding == t::HullVertices2({{-1, -1}, {-1, 2}, {3, 2}, {3, -2}, {1, -2}}) &&
      t::StrictlyInside2(colliding, {0, 0});
  const bool ok2 =
      separated == t::HullVertices2(
                       {{0.5, -2}, {0.5, 5}, {2.5, 5}, {3, 2}, {3, -1}, {2.5, -2}}) &&
      !t::StrictlyInside2(separated, {0, 0});
  return {ok1 && ok2, Fmt("colliding case %s, separated case %s",
                          ok1 ? "exact, origin inside" : "MISMATCH",
                          ok2 ? "exact, origin outside" : "MISMATCH")};
}

Outcome ConstraintCounts() {
  const auto full = constraint_count(6, 6, 1);
  const auto single = constraint_count(1, 6, 1);
  return {full == 36 && single == 6,
          Fmt("6x6x1 = %llu, 1x6x1 = %llu", static_cast<unsigned long long>(full),
              static_cast<unsigned long long>(single))};
}

Outcome SweepOrdering() {
  const auto start = std::chrono::steady_clock::now();
  const CollisionScene scene = generate_example_scene();
  SweepSpec spec;
  spec.moving = scene.robot.front().obb;
  const std::vector<std::size_t> counts = {1, 2, 6};
  const SweepTable table = run_sweep(scene, spec, counts);
  std::vector<double> gap(counts.size(), -INFINITY);
  std::size_t violations = 0;
  for (const SweepRow& row : table.rows) {
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (row.dist_sphere[c] > row.dist_gjk + 1e-9) ++violations;
      gap[c] = std::max(gap[c], row.dist_gjk - row.dist_sphere[c]);
    }
  }
  const double elapsed = Seconds(start);
  const bool decreasing = gap[0] > gap[1] && gap[1] > gap[2];
  return {violations == 0 && decreasing && elapsed <= 10.0,
          Fmt("%zu rows, %zu conservatism violations, max gap N=1 %.5f, "
              "N=2 %.5f, N=6 %.5f, %.3f s",
              table.rows.size(), violations, gap[0], gap[1], gap[2], elapsed)};
}

Outcome SorOracle() {
  std::mt19937_64 rng(1005);
  const std::size_t ks[] = {4, 8, 16};
  const double us[] = {0.5, 1.0, 2.0};
  int mismatches = 0;
  std::size_t total_removed = 0;
  for (int c = 0; c < 50; ++c) {
    const std::size_t n = 100 + rng() % 4901;
    std::vector<Point3> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(t::RandomVec(rng, -1, 1));
    // A few far points so the upper band matters.
    for (int i = 0; i < 3; ++i) pts[rng() % n] = t::RandomVec(rng, 3, 5);
    const std::size_t k = ks[c % 3];
    const double u = us[(c / 3) % 3];
    const auto [kept, report] =
        statistical_outlier_removal(PointCloud(pts), {k, u});
    if (report.removed_indices != t::BruteSorRemoved(pts, k, u)) ++mismatches;
    total_removed += report.removed_indices.size();
  }
  return {mismatches == 0, Fmt("%d/50 clouds differ, %zu points removed in total",
                               mismatches, total_removed)};
}

Outcome SegmentationFixtures() {
  SegmentationParams p;
  p.d_th = 0.05;
  const std::size_t planes =
      region_growing(PointCloud(t::ParallelPlanes(0.2).points), p)
          .clusters.size();
  t::LabeledCloud single;
  t::AddGrid(single, {0, 0, 0}, {1, 0, 0}, 1.0, {0, 1, 0}, 1.0, 0.02, 0);
  const std::size_t one =
      region_growing(PointCloud(single.points), p).clusters.size();
  SegmentationParams lp;
  lp.alpha_th = 10.0 * std::numbers::pi / 180.0;
  const t::LabeledCloud l = t::LShape();
  const Segmentation seg = region_growing(PointCloud(l.points), lp);
  const std::size_t bad = t::Misassigned(seg, l.labels);
  return {planes == 2 && one == 1 && seg.clusters.size() == 2 && bad <= lp.k,
          Fmt("parallel planes %zu, single plane %zu, L-surface %zu clusters "
              "with %zu misassigned (k = %zu)",
              planes, one, seg.clusters.size(), bad, lp.k)};
}

Outcome ObbRecovery() {
  std::mt19937_64 rng(1007);
  const std::vector<Point3> surface = t::BoxSurfaceGrid({1.0, 0.5, 0.5}, 11);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Mat3 r = t::RandomRotation(rng);
    const Vec3 shift = t::RandomVec(rng, -2, 2);
    std::vector<Point3> pts;
    for (const Point3& p : surface) pts.push_back(r * p + shift);
    const Obb box = fit_obb(pts);
    std::vector<double> h = {box.half_extents.x, box.half_extents.y,
                             box.half_extents.z};
    std::sort(h.begin(), h.end());
    worst = std::max({worst, std::abs(h[0] - 0.5), std::abs(h[1] - 0.5),
                      std::abs(h[2] - 1.0)});
  }
  std::vector<Point3> pts;
  const Mat3 r45 = t::RotationZ(std::numbers::pi / 4);
  for (const Point3& p : surface) pts.push_back(r45 * p);
  const double obb = fit_obb(pts).Volume();
  const double aabb = fit_aabb(pts).Volume();
  // (2 + 1) / sqrt(2) per horizontal side times 1 in z.
  const double aabb_analytic = 4.5;
  return {worst <= 1e-6 && std::abs(obb - 2.0) <= 1e-6 && obb < aabb &&
              std::abs(aabb - aabb_analytic) <= 1e-9,
          Fmt("max half-extent error %.3g; 45 deg: OBB %.6f < AABB %.6f "
              "(analytic 4.5; the quoted ~3.18 does not match this geometry)",
              worst, obb, aabb)};
}

Outcome EigenNumerics() {
  std::mt19937_64 rng(1008);
  double ortho = 0.0, recon = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Vec3 lambda = t::RandomVec(rng, 0.0, 1.0);
    if (i % 4 == 1) lambda.y = lambda.x;
    if (i % 4 == 2) lambda = {lambda.x, lambda.x, lambda.x};
    if (i % 4 == 3) lambda.z = 0.0;
    const SymMat3 m = t::FromSpectrum(t::RandomRotation(rng), lambda);
    const EigenBasis b = eigen_sym3(m);
    ortho = std::max(ortho, t::OrthonormalityError(b));
    recon = std::max(recon, t::ReconstructionError(m, b));
  }
  double cov = 0.0;
  for (std::size_t n : {1u, 3u, 10u, 100u, 1000u, 10000u}) {
    std::vector<Point3> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(t::RandomVec(rng, -1, 1) + Vec3{5, -3, 2});
    }
    const SymMat3 c = covariance(pts);
    const auto d = t::DirectCovariance(pts);
    const double got[6] = {c.xx, c.xy, c.xz, c.yy, c.yz, c.zz};
    for (int j = 0; j < 6; ++j) cov = std::max(cov, std::abs(got[j] - d[j]));
  }
  return {ortho <= 1e-10 && recon <= 1e-9 && cov <= 1e-12,
          Fmt("orthonormality %.3g, reconstruction %.3g, covariance %.3g", ortho,
              recon, cov)};
}

std::string WithoutTimestamp(std::string json) {
  const auto pos = json.find("\"timestamp\"");
  if (pos == std::string::npos) return json;
  return json.erase(pos, json.find('\n', pos) - pos);
}

Outcome PipelineEndToEnd() {
  std::mt19937_64 rng(81);
  const t::LabeledCloud truth = t::FloorAndObstacles(0.025, 1e-3, rng);
  const PipelineConfig config = PipelineConfig::Parse(
      "sor.k = 8\nsor.u = 3\nseg.k = 10\nseg.d_th = 0.05\n"
      "seg.kappa_th = 0.05\nseg.alpha_deg = 10\nsplit.seed_res = 0.5\n"
      "split.voxel_res = 0.05\nscene.name = synthetic\n");
  const PointCloud cloud(truth.points);
  const PipelineResult first = run_pipeline(config, cloud);
  const PipelineResult second = run_pipeline(config, cloud);
  const std::string json = SceneToJson(first.scene);
  const CollisionScene loaded = SceneFromJson(json);
  std::size_t points = 0, outside = 0;
  const auto& sources = first.report.volume_sources;
  const bool sizes_match = loaded.environment.size() == sources.size();
  for (std::size_t v = 0; sizes_match && v < sources.size(); ++v) {
    for (std::size_t i : sources[v]) {
      ++points;
      if (!loaded.environment[v].obb.Contains(first.report.filtered[i])) ++outside;
    }
  }
  const bool stable =
      WithoutTimestamp(json) == WithoutTimestamp(SceneToJson(second.scene));
  return {sizes_match && outside == 0 && points > 0 && stable,
          Fmt("%zu volumes from %zu clusters, %zu/%zu points outside their box, "
              "rerun %s",
              loaded.environment.size(), first.report.clusters, outside, points,
              stable ? "byte-identical" : "DIFFERS")};
}

}  // namespace
}  // namespace obbscene

int main() {
  using obbscene::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"GJK distance and booleans vs box oracles", obbscene::GjkAgainstOracles},
      {"Minkowski difference figure", obbscene::MinkowskiFigure},
      {"constraint counts", obbscene::ConstraintCounts},
      {"sphere sweep conservatism and ordering", obbscene::SweepOrdering},
      {"outlier removal vs brute force", obbscene::SorOracle},
      {"segmentation fixtures", obbscene::SegmentationFixtures},
      {"OBB recovery", obbscene::ObbRecovery},
      {"eigen and covariance numerics", obbscene::EigenNumerics},
      {"pipeline containment and stability", obbscene::PipelineEndToEnd},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, check] : criteria) {
    ++n;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", n, name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
