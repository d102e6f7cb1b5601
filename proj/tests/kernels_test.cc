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

#include "obbscene/simd/kernels.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "obbscene/error.h"
#include "oracles.h"

namespace obbscene::simd {
namespace {

std::vector<Backend> VectorBackends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (BackendAvailable(b)) out.push_back(b);
  }
  return out;
}

std::vector<Point3> RandomPoints(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point3> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(testing::RandomVec(rng, -3.0, 3.0));
  }
  return pts;
}

class BackendRestorer {
 public:
  BackendRestorer() : saved_(ActiveBackend()) {}
  ~BackendRestorer() { SetBackend(saved_); }

 private:
  Backend saved_;
};

TEST(DispatchTest, ScalarAlwaysAvailable) {
  EXPECT_TRUE(BackendAvailable(Backend::kScalar));
  EXPECT_TRUE(BackendAvailable(BestAvailableBackend()));
}

TEST(DispatchTest, ParseBackendNames) {
  EXPECT_EQ(ParseBackend("scalar"), Backend::kScalar);
  EXPECT_EQ(ParseBackend("avx2"), Backend::kAvx2);
  EXPECT_EQ(ParseBackend("neon"), Backend::kNeon);
  EXPECT_EQ(ParseBackend("auto"), BestAvailableBackend());
  EXPECT_THROW(ParseBackend("sse9"), Error);
}

TEST(DispatchTest, SetBackendSwitchesAndRejectsUnavailable) {
  BackendRestorer restore;
  SetBackend(Backend::kScalar);
  EXPECT_EQ(ActiveBackend(), Backend::kScalar);
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (!BackendAvailable(b)) {
      EXPECT_THROW(SetBackend(b), Error);
      EXPECT_THROW(KernelsFor(b), Error);
    }
  }
}

TEST(KernelEquivalenceTest, SquaredDistancesBitExact) {
  std::mt19937_64 rng(1);
  const KernelTable& ref = KernelsFor(Backend::kScalar);
  for (Backend b : VectorBackends()) {
    const KernelTable& vec = KernelsFor(b);
    for (std::size_t n = 0; n < 70; ++n) {
      const PointsSoa soa(RandomPoints(rng, n));
      const Vec3 q = testing::RandomVec(rng, -1, 1);
      std::vector<double> want(n), got(n);
      ref.squared_distances(soa.view(), q, want.data());
      vec.squared_distances(soa.view(), q, got.data());
      EXPECT_EQ(want, got) << BackendName(b) << " n=" << n;
    }
  }
}

TEST(KernelEquivalenceTest, SquaredDistancesMatchDefinition) {
  std::mt19937_64 rng(2);
  const auto pts = RandomPoints(rng, 33);
  const PointsSoa soa(pts);
  const Vec3 q{0.25, -0.5, 1.0};
  std::vector<double> out(pts.size());
  SquaredDistances(soa.view(), q, out);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_DOUBLE_EQ(out[i], SquaredNorm(pts[i] - q));
  }
}

TEST(KernelEquivalenceTest, ArgMaxDotAgreesIncludingTies) {
  std::mt19937_64 rng(3);
  const KernelTable& ref = KernelsFor(Backend::kScalar);
  for (std::size_t n = 1; n < 70; ++n) {
    std::vector<Point3> pts = RandomPoints(rng, n);
    // Plant exact duplicates of the maximizer later in the list.
    const Vec3 dir = testing::RandomVec(rng, -1, 1);
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (Dot(pts[i], dir) > Dot(pts[best], dir)) best = i;
    }
    for (std::size_t i = best + 1; i < n; i += 3) pts[i] = pts[best];
    const PointsSoa soa(pts);
    EXPECT_EQ(ref.argmax_dot(soa.view(), dir), best) << "n=" << n;
    for (Backend b : VectorBackends()) {
      EXPECT_EQ(KernelsFor(b).argmax_dot(soa.view(), dir), best)
          << BackendName(b) << " n=" << n;
    }
  }
}

TEST(KernelEquivalenceTest, ArgMaxDotAllEqualReturnsZero) {
  const std::vector<Point3> pts(13, Point3{1, 2, 3});
  const PointsSoa soa(pts);
  for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
    if (!BackendAvailable(b)) continue;
    EXPECT_EQ(KernelsFor(b).argmax_dot(soa.view(), {0.3, -1, 2}), 0u);
  }
}

TEST(KernelEquivalenceTest, MinPairClearanceBitExact) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> r(0.01, 0.5);
  const KernelTable& ref = KernelsFor(Backend::kScalar);
  for (std::size_t na = 1; na < 12; ++na) {
    for (std::size_t nb = 1; nb < 12; ++nb) {
      const PointsSoa a(RandomPoints(rng, na));
      const PointsSoa b(RandomPoints(rng, nb));
      std::vector<double> ra(na), rb(nb);
      for (double& v : ra) v = r(rng);
      for (double& v : rb) v = r(rng);
      const double want =
          ref.min_pair_clearance(a.view(), ra.data(), b.view(), rb.data());
      double brute = INFINITY;
      for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
          brute = std::min(brute,
                           Distance(a[i], b[j]) - ra[i] - rb[j]);
        }
      }
      EXPECT_NEAR(want, brute, 1e-15);
      for (Backend bk : VectorBackends()) {
        EXPECT_EQ(KernelsFor(bk).min_pair_clearance(a.view(), ra.data(),
                                                    b.view(), rb.data()),
                  want);
      }
    }
  }
}

TEST(KernelEquivalenceTest, CentralMomentSumsAgreeToRounding) {
  std::mt19937_64 rng(5);
  const KernelTable& ref = KernelsFor(Backend::kScalar);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 100u, 1001u}) {
    const auto pts = RandomPoints(rng, n);
    const PointsSoa soa(pts);
    const Vec3 mean = testing::RandomVec(rng, -0.1, 0.1);
    const SymMat3 want = ref.central_moment_sums(soa.view(), mean);
    for (Backend b : VectorBackends()) {
      const SymMat3 got = KernelsFor(b).central_moment_sums(soa.view(), mean);
      const double scale = 1e-13 * static_cast<double>(n);
      EXPECT_NEAR(got.xx, want.xx, scale);
      EXPECT_NEAR(got.xy, want.xy, scale);
      EXPECT_NEAR(got.xz, want.xz, scale);
      EXPECT_NEAR(got.yy, want.yy, scale);
      EXPECT_NEAR(got.yz, want.yz, scale);
      EXPECT_NEAR(got.zz, want.zz, scale);
    }
  }
}

TEST(KernelEquivalenceTest, InsideBoxMaskBitExactWithBoundary) {
  std::mt19937_64 rng(6);
  const KernelTable& ref = KernelsFor(Backend::kScalar);
  const Vec3 lo{-1, -1, -1}, hi{1, 1, 1};
  for (std::size_t n = 0; n < 40; ++n) {
    std::vector<Point3> pts = RandomPoints(rng, n);
    if (n > 2) pts[1] = {1.0, -1.0, 0.0};  // on the boundary: inside
    const PointsSoa soa(pts);
    std::vector<std::uint8_t> want(n), got(n);
    ref.inside_box_mask(soa.view(), lo, hi, want.data());
    for (std::size_t i = 0; i < n; ++i) {
      const bool in = pts[i].x >= -1 && pts[i].x <= 1 && pts[i].y >= -1 &&
                      pts[i].y <= 1 && pts[i].z >= -1 && pts[i].z <= 1;
      EXPECT_EQ(want[i] != 0, in);
    }
    for (Backend b : VectorBackends()) {
      KernelsFor(b).inside_box_mask(soa.view(), lo, hi, got.data());
      EXPECT_EQ(want, got) << BackendName(b);
    }
  }
}

TEST(PointsSoaTest, PushBackAndSubView) {
  PointsSoa soa;
  soa.push_back({1, 2, 3});
  soa.push_back({4, 5, 6});
  soa.push_back({7, 8, 9});
  EXPECT_EQ(soa.size(), 3u);
  EXPECT_EQ(soa[1], (Point3{4, 5, 6}));
  const SoaView v = soa.view(1, 3);
  EXPECT_EQ(v.size, 2u);
  EXPECT_EQ(v.x[0], 4.0);
  EXPECT_EQ(v.z[1], 9.0);
}

}  // namespace
}  // namespace obbscene::simd
