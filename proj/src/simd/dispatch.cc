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

#include <atomic>
#include <string>

#include "kernel_tables.h"
#include "obbscene/error.h"

namespace obbscene::simd {
namespace {

const KernelTable* TableFor(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return &internal::kScalarKernels;
    case Backend::kAvx2:
#if defined(OBBSCENE_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return &internal::kAvx2Kernels;
#endif
      return nullptr;
    case Backend::kNeon:
#if defined(OBBSCENE_HAVE_NEON)
      return &internal::kNeonKernels;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

struct Active {
  std::atomic<const KernelTable*> table;
  std::atomic<Backend> backend;

  Active() {
    const Backend best = BestAvailableBackend();
    table.store(TableFor(best));
    backend.store(best);
  }
};

Active& GetActive() {
  static Active active;
  return active;
}

const KernelTable& Table() {
  return *GetActive().table.load(std::memory_order_relaxed);
}

}  // namespace

std::string_view BackendName(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

Backend ParseBackend(std::string_view name) {
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  if (name == "neon") return Backend::kNeon;
  if (name == "auto") return BestAvailableBackend();
  throw Error(ErrorCode::kInvalidArgument,
              "unknown kernel backend '" + std::string(name) + "'");
}

bool BackendAvailable(Backend backend) { return TableFor(backend) != nullptr; }

Backend BestAvailableBackend() {
  if (BackendAvailable(Backend::kAvx2)) return Backend::kAvx2;
  if (BackendAvailable(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

Backend ActiveBackend() { return GetActive().backend.load(); }

void SetBackend(Backend backend) {
  const KernelTable* table = TableFor(backend);
  if (table == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel backend '" + std::string(BackendName(backend)) +
                    "' is not available on this machine");
  }
  GetActive().table.store(table);
  GetActive().backend.store(backend);
}

const KernelTable& KernelsFor(Backend backend) {
  const KernelTable* table = TableFor(backend);
  if (table == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel backend '" + std::string(BackendName(backend)) +
                    "' is not available on this machine");
  }
  return *table;
}

PointsSoa::PointsSoa(std::span<const Point3> points) {
  reserve(points.size());
  for (const Point3& p : points) push_back(p);
}

void PointsSoa::reserve(std::size_t n) {
  x_.reserve(n);
  y_.reserve(n);
  z_.reserve(n);
}

void PointsSoa::push_back(const Point3& p) {
  x_.push_back(p.x);
  y_.push_back(p.y);
  z_.push_back(p.z);
}

void PointsSoa::clear() {
  x_.clear();
  y_.clear();
  z_.clear();
}

void SquaredDistances(SoaView points, const Vec3& q, std::span<double> out) {
  Table().squared_distances(points, q, out.data());
}

std::size_t ArgMaxDot(SoaView points, const Vec3& dir) {
  return Table().argmax_dot(points, dir);
}

double MinPairClearance(SoaView a, const double* radii_a, SoaView b,
                        const double* radii_b) {
  return Table().min_pair_clearance(a, radii_a, b, radii_b);
}

SymMat3 CentralMomentSums(SoaView points, const Vec3& mean) {
  return Table().central_moment_sums(points, mean);
}

void InsideBoxMask(SoaView points, const Vec3& lo, const Vec3& hi,
                   std::span<std::uint8_t> out) {
  Table().inside_box_mask(points, lo, hi, out.data());
}

}  // namespace obbscene::simd
