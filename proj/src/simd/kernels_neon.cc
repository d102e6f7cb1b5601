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

// AArch64 Advanced SIMD variants, two doubles per register. Built with
// -ffp-contract=off so vmulq/vaddq pairs are not fused.

#include <arm_neon.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernel_tables.h"

namespace obbscene::simd::internal {
namespace {

inline float64x2_t SquaredDistance2(float64x2_t x, float64x2_t y,
                                    float64x2_t z, float64x2_t qx,
                                    float64x2_t qy, float64x2_t qz) {
  const float64x2_t dx = vsubq_f64(x, qx);
  const float64x2_t dy = vsubq_f64(y, qy);
  const float64x2_t dz = vsubq_f64(z, qz);
  return vaddq_f64(vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)),
                   vmulq_f64(dz, dz));
}

void SquaredDistancesNeon(SoaView p, const Vec3& q, double* out) {
  const float64x2_t qx = vdupq_n_f64(q.x);
  const float64x2_t qy = vdupq_n_f64(q.y);
  const float64x2_t qz = vdupq_n_f64(q.z);
  std::size_t i = 0;
  for (; i + 2 <= p.size; i += 2) {
    vst1q_f64(out + i, SquaredDistance2(vld1q_f64(p.x + i), vld1q_f64(p.y + i),
                                        vld1q_f64(p.z + i), qx, qy, qz));
  }
  for (; i < p.size; ++i) {
    const double dx = p.x[i] - q.x;
    const double dy = p.y[i] - q.y;
    const double dz = p.z[i] - q.z;
    out[i] = dx * dx + dy * dy + dz * dz;
  }
}

std::size_t ArgMaxDotNeon(SoaView p, const Vec3& d) {
  std::size_t best = 0;
  double best_dot;
  std::size_t i = 0;
  if (p.size >= 2) {
    const float64x2_t dx = vdupq_n_f64(d.x);
    const float64x2_t dy = vdupq_n_f64(d.y);
    const float64x2_t dz = vdupq_n_f64(d.z);
    float64x2_t lane_best = vdupq_n_f64(-INFINITY);
    uint64x2_t lane_idx = vdupq_n_u64(0);
    const std::uint64_t start[2] = {0, 1};
    uint64x2_t idx = vld1q_u64(start);
    const uint64x2_t step = vdupq_n_u64(2);
    for (; i + 2 <= p.size; i += 2) {
      const float64x2_t dot =
          vaddq_f64(vaddq_f64(vmulq_f64(vld1q_f64(p.x + i), dx),
                              vmulq_f64(vld1q_f64(p.y + i), dy)),
                    vmulq_f64(vld1q_f64(p.z + i), dz));
      const uint64x2_t gt = vcgtq_f64(dot, lane_best);
      lane_best = vbslq_f64(gt, dot, lane_best);
      lane_idx = vbslq_u64(gt, idx, lane_idx);
      idx = vaddq_u64(idx, step);
    }
    const double v0 = vgetq_lane_f64(lane_best, 0);
    const double v1 = vgetq_lane_f64(lane_best, 1);
    const auto i0 = static_cast<std::size_t>(vgetq_lane_u64(lane_idx, 0));
    const auto i1 = static_cast<std::size_t>(vgetq_lane_u64(lane_idx, 1));
    if (v1 > v0 || (v1 == v0 && i1 < i0)) {
      best_dot = v1;
      best = i1;
    } else {
      best_dot = v0;
      best = i0;
    }
  } else {
    best_dot = p.x[0] * d.x + p.y[0] * d.y + p.z[0] * d.z;
    i = 1;
  }
  for (; i < p.size; ++i) {
    const double dot = p.x[i] * d.x + p.y[i] * d.y + p.z[i] * d.z;
    if (dot > best_dot) {
      best_dot = dot;
      best = i;
    }
  }
  return best;
}

double MinPairClearanceNeon(SoaView a, const double* ra, SoaView b,
                            const double* rb) {
  double best = INFINITY;
  for (std::size_t i = 0; i < a.size; ++i) {
    const float64x2_t ax = vdupq_n_f64(a.x[i]);
    const float64x2_t ay = vdupq_n_f64(a.y[i]);
    const float64x2_t az = vdupq_n_f64(a.z[i]);
    const float64x2_t rai = vdupq_n_f64(ra[i]);
    float64x2_t lane_best = vdupq_n_f64(INFINITY);
    std::size_t j = 0;
    for (; j + 2 <= b.size; j += 2) {
      const float64x2_t d2 =
          SquaredDistance2(vld1q_f64(b.x + j), vld1q_f64(b.y + j),
                           vld1q_f64(b.z + j), ax, ay, az);
      const float64x2_t c =
          vsubq_f64(vsubq_f64(vsqrtq_f64(d2), rai), vld1q_f64(rb + j));
      lane_best = vminq_f64(lane_best, c);
    }
    double row_best = vminvq_f64(lane_best);
    for (; j < b.size; ++j) {
      const double dx = b.x[j] - a.x[i];
      const double dy = b.y[j] - a.y[i];
      const double dz = b.z[j] - a.z[i];
      const double c = std::sqrt(dx * dx + dy * dy + dz * dz) - ra[i] - rb[j];
      if (c < row_best) row_best = c;
    }
    if (row_best < best) best = row_best;
  }
  return best;
}

SymMat3 CentralMomentSumsNeon(SoaView p, const Vec3& m) {
  const float64x2_t mx = vdupq_n_f64(m.x);
  const float64x2_t my = vdupq_n_f64(m.y);
  const float64x2_t mz = vdupq_n_f64(m.z);
  float64x2_t sxx = vdupq_n_f64(0.0), sxy = vdupq_n_f64(0.0),
              sxz = vdupq_n_f64(0.0), syy = vdupq_n_f64(0.0),
              syz = vdupq_n_f64(0.0), szz = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= p.size; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(p.x + i), mx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(p.y + i), my);
    const float64x2_t dz = vsubq_f64(vld1q_f64(p.z + i), mz);
    sxx = vaddq_f64(sxx, vmulq_f64(dx, dx));
    sxy = vaddq_f64(sxy, vmulq_f64(dx, dy));
    sxz = vaddq_f64(sxz, vmulq_f64(dx, dz));
    syy = vaddq_f64(syy, vmulq_f64(dy, dy));
    syz = vaddq_f64(syz, vmulq_f64(dy, dz));
    szz = vaddq_f64(szz, vmulq_f64(dz, dz));
  }
  SymMat3 s{vaddvq_f64(sxx), vaddvq_f64(sxy), vaddvq_f64(sxz),
            vaddvq_f64(syy), vaddvq_f64(syz), vaddvq_f64(szz)};
  for (; i < p.size; ++i) {
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

void InsideBoxMaskNeon(SoaView p, const Vec3& lo, const Vec3& hi,
                       std::uint8_t* out) {
  const float64x2_t lx = vdupq_n_f64(lo.x), ly = vdupq_n_f64(lo.y),
                    lz = vdupq_n_f64(lo.z);
  const float64x2_t hx = vdupq_n_f64(hi.x), hy = vdupq_n_f64(hi.y),
                    hz = vdupq_n_f64(hi.z);
  std::size_t i = 0;
  for (; i + 2 <= p.size; i += 2) {
    const float64x2_t x = vld1q_f64(p.x + i);
    const float64x2_t y = vld1q_f64(p.y + i);
    const float64x2_t z = vld1q_f64(p.z + i);
    uint64x2_t in = vandq_u64(vcgeq_f64(x, lx), vcleq_f64(x, hx));
    in = vandq_u64(in, vandq_u64(vcgeq_f64(y, ly), vcleq_f64(y, hy)));
    in = vandq_u64(in, vandq_u64(vcgeq_f64(z, lz), vcleq_f64(z, hz)));
    out[i] = vgetq_lane_u64(in, 0) != 0 ? 1 : 0;
    out[i + 1] = vgetq_lane_u64(in, 1) != 0 ? 1 : 0;
  }
  for (; i < p.size; ++i) {
    out[i] = (p.x[i] >= lo.x && p.x[i] <= hi.x && p.y[i] >= lo.y &&
              p.y[i] <= hi.y && p.z[i] >= lo.z && p.z[i] <= hi.z)
                 ? 1
                 : 0;
  }
}

}  // namespace

const KernelTable kNeonKernels = {
    &SquaredDistancesNeon, &ArgMaxDotNeon, &MinPairClearanceNeon,
    &CentralMomentSumsNeon, &InsideBoxMaskNeon};

}  // namespace obbscene::simd::internal
