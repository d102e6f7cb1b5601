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

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernel_tables.h"

namespace obbscene::simd::internal {
namespace {

void SquaredDistancesScalar(SoaView p, const Vec3& q, double* out) {
  for (std::size_t i = 0; i < p.size; ++i) {
    const double dx = p.x[i] - q.x;
    const double dy = p.y[i] - q.y;
    const double dz = p.z[i] - q.z;
    out[i] = dx * dx + dy * dy + dz * dz;
  }
}

std::size_t ArgMaxDotScalar(SoaView p, const Vec3& d) {
  std::size_t best = 0;
  double best_dot = p.x[0] * d.x + p.y[0] * d.y + p.z[0] * d.z;
  for (std::size_t i = 1; i < p.size; ++i) {
    const double dot = p.x[i] * d.x + p.y[i] * d.y + p.z[i] * d.z;
    if (dot > best_dot) {
      best_dot = dot;
      best = i;
    }
  }
  return best;
}

double MinPairClearanceScalar(SoaView a, const double* ra, SoaView b,
                              const double* rb) {
  double best = INFINITY;
  for (std::size_t i = 0; i < a.size; ++i) {
    for (std::size_t j = 0; j < b.size; ++j) {
      const double dx = b.x[j] - a.x[i];
      const double dy = b.y[j] - a.y[i];
      const double dz = b.z[j] - a.z[i];
      const double c = std::sqrt(dx * dx + dy * dy + dz * dz) - ra[i] - rb[j];
      if (c < best) best = c;
    }
  }
  return best;
}

SymMat3 CentralMomentSumsScalar(SoaView p, const Vec3& m) {
  SymMat3 s;
  for (std::size_t i = 0; i < p.size; ++i) {
    const double dx = p.x[i] - m.x;
    const double dy = p.y[i] - m.y;
    const double dz = p.z[i] - m.z;
    s.xx += dx * dx;
    s.xy += dx * dy;
    s.xz += dx * dz;
    s.yy += dy * dy;
    s.yz += dy * dz;
    s.zz += dz * dz;
  }
  return s;
}

void InsideBoxMaskScalar(SoaView p, const Vec3& lo, const Vec3& hi,
                         std::uint8_t* out) {
  for (std::size_t i = 0; i < p.size; ++i) {
    out[i] = (p.x[i] >= lo.x && p.x[i] <= hi.x && p.y[i] >= lo.y &&
              p.y[i] <= hi.y && p.z[i] >= lo.z && p.z[i] <= hi.z)
                 ? 1
                 : 0;
  }
}

}  // namespace

const KernelTable kScalarKernels = {
    &SquaredDistancesScalar, &ArgMaxDotScalar, &MinPairClearanceScalar,
    &CentralMomentSumsScalar, &InsideBoxMaskScalar};

}  // namespace obbscene::simd::internal
