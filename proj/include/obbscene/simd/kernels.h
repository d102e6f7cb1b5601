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

#ifndef OBBSCENE_SIMD_KERNELS_H_
#define OBBSCENE_SIMD_KERNELS_H_

// Data-parallel inner loops shared by the spatial index, the collision
// queries and the statistics code. Every kernel has a scalar reference
// implementation; vector variants (AVX2 on x86-64, NEON on AArch64) are
// selected at runtime. All kernels except CentralMomentSums return results
// bit-identical to the scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "obbscene/vec3.h"

namespace obbscene::simd {

// Structure-of-arrays view over `size` points.
struct SoaView {
  const double* x = nullptr;
  const double* y = nullptr;
  const double* z = nullptr;
  std::size_t size = 0;
};

// Owning structure-of-arrays point storage.
class PointsSoa {
 public:
  PointsSoa() = default;
  explicit PointsSoa(std::span<const Point3> points);

  void reserve(std::size_t n);
  void push_back(const Point3& p);
  void clear();

  std::size_t size() const { return x_.size(); }
  bool empty() const { return x_.empty(); }
  Point3 operator[](std::size_t i) const { return {x_[i], y_[i], z_[i]}; }

  SoaView view() const { return {x_.data(), y_.data(), z_.data(), size()}; }
  // View over the half-open range [begin, end).
  SoaView view(std::size_t begin, std::size_t end) const {
    return {x_.data() + begin, y_.data() + begin, z_.data() + begin,
            end - begin};
  }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> z_;
};

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view BackendName(Backend backend);
// Accepts "scalar", "avx2", "neon" and "auto" (best available).
Backend ParseBackend(std::string_view name);
bool BackendAvailable(Backend backend);
Backend BestAvailableBackend();
Backend ActiveBackend();
// Throws Error(kInvalidArgument) if the backend is not available here.
void SetBackend(Backend backend);

// out[i] = |p_i - q|^2.
void SquaredDistances(SoaView points, const Vec3& q, std::span<double> out);

// Index of the point maximizing <p_i, dir>; ties resolve to the lowest index.
// Requires points.size >= 1.
std::size_t ArgMaxDot(SoaView points, const Vec3& dir);

// min over (i, j) of |b_j - a_i| - ra_i - rb_j. Requires both sets nonempty.
double MinPairClearance(SoaView a, const double* radii_a, SoaView b,
                        const double* radii_b);

// Unnormalized second central moments: sum of (p - mean)(p - mean)^T.
// Vector variants use lane-wise partial sums, so results agree with the
// scalar reference to rounding only.
SymMat3 CentralMomentSums(SoaView points, const Vec3& mean);

// out[i] = 1 if lo <= p_i <= hi componentwise, else 0.
void InsideBoxMask(SoaView points, const Vec3& lo, const Vec3& hi,
                   std::span<std::uint8_t> out);

// Per-backend function table, exposed for equivalence tests.
struct KernelTable {
  void (*squared_distances)(SoaView, const Vec3&, double*);
  std::size_t (*argmax_dot)(SoaView, const Vec3&);
  double (*min_pair_clearance)(SoaView, const double*, SoaView,
                               const double*);
  SymMat3 (*central_moment_sums)(SoaView, const Vec3&);
  void (*inside_box_mask)(SoaView, const Vec3&, const Vec3&, std::uint8_t*);
};

// Throws Error(kInvalidArgument) if the backend is not available here.
const KernelTable& KernelsFor(Backend backend);

}  // namespace obbscene::simd

#endif  // OBBSCENE_SIMD_KERNELS_H_
