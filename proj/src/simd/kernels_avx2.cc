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

// Compiled with -mavx2 only. No FMA: products and sums are rounded
// separately so results match the scalar reference exactly.

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernel_tables.h"

namespace obbscene::simd::internal {
namespace {

inline __m256d SquaredDistance4(__m256d x, __m256d y, __m256d z, __m256d qx,
                                __m256d qy, __m256d qz) {
  const __m256d dx = _mm256_sub_pd(x, qx);
  const __m256d dy = _mm256_sub_pd(y, qy);
  const __m256d dz = _mm256_sub_pd(z, qz);
  return _mm256_add_pd(
      _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
      _mm256_mul_pd(dz, dz));
}

void SquaredDistancesAvx2(SoaView p, const Vec3& q, double* out) {
  const __m256d qx = _mm256_set1_pd(q.x);
  const __m256d qy = _mm256_set1_pd(q.y);
  const __m256d qz = _mm256_set1_pd(q.z);
  std::size_t i = 0;
  for (; i + 4 <= p.size; i += 4) {
    const __m256d d2 =
        SquaredDistance4(_mm256_loadu_pd(p.x + i), _mm256_loadu_pd(p.y + i),
                         _mm256_loadu_pd(p.z + i), qx, qy, qz);
    _mm256_storeu_pd(out + i, d2);
  }
  for (; i < p.size; ++i) {
    const double dx = p.x[i] - q.x;
    const double dy = p.y[i] - q.y;
    const double dz = p.z[i] - q.z;
    out[i] = dx * dx + dy * dy + dz * dz;
  }
}

std::size_t ArgMaxDotAvx2(SoaView p, const Vec3& d) {
  std::size_t best = 0;
  double best_dot = -INFINITY;
  std::size_t i = 0;
  if (p.size >= 4) {
    const __m256d dx = _mm256_set1_pd(d.x);
    const __m256d dy = _mm256_set1_pd(d.y);
    const __m256d dz = _mm256_set1_pd(d.z);
    __m256d lane_best = _mm256_set1_pd(-INFINITY);
    __m256i lane_idx = _mm256_set1_epi64x(0);
    __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
    const __m256i step = _mm256_set1_epi64x(4);
    for (; i + 4 <= p.size; i += 4) {
      const __m256d dot = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(p.x + i), dx),
                        _mm256_mul_pd(_mm256_loadu_pd(p.y + i), dy)),
          _mm256_mul_pd(_mm256_loadu_pd(p.z + i), dz));
      const __m256d gt = _mm256_cmp_pd(dot, lane_best, _CMP_GT_OQ);
      lane_best = _mm256_blendv_pd(lane_best, dot, gt);
      lane_idx = _mm256_castpd_si256(_mm256_blendv_pd(
          _mm256_castsi256_pd(lane_idx), _mm256_castsi256_pd(idx), gt));
      idx = _mm256_add_epi64(idx, step);
    }
    alignas(32) double vals[4];
    alignas(32) std::int64_t ids[4];
    _mm256_store_pd(vals, lane_best);
    _mm256_store_si256(reinterpret_cast<__m256i*>(ids), lane_idx);
    best_dot = vals[0];
    best = static_cast<std::size_t>(ids[0]);
    for (int lane = 1; lane < 4; ++lane) {
      const auto id = static_cast<std::size_t>(ids[lane]);
      if (vals[lane] > best_dot || (vals[lane] == best_dot && id < best)) {
        best_dot = vals[lane];
        best = id;
      }
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

inline double HorizontalMin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

inline double HorizontalSum(__m256d v) {
  // Fixed pairing: (l0 + l2) + (l1 + l3).
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double MinPairClearanceAvx2(SoaView a, const double* ra, SoaView b,
                            const double* rb) {
  double best = INFINITY;
  for (std::size_t i = 0; i < a.size; ++i) {
    const __m256d ax = _mm256_set1_pd(a.x[i]);
    const __m256d ay = _mm256_set1_pd(a.y[i]);
    const __m256d az = _mm256_set1_pd(a.z[i]);
    const __m256d rai = _mm256_set1_pd(ra[i]);
    __m256d lane_best = _mm256_set1_pd(INFINITY);
    std::size_t j = 0;
    for (; j + 4 <= b.size; j += 4) {
      const __m256d d2 =
          SquaredDistance4(_mm256_loadu_pd(b.x + j), _mm256_loadu_pd(b.y + j),
                           _mm256_loadu_pd(b.z + j), ax, ay, az);
      const __m256d c = _mm256_sub_pd(_mm256_sub_pd(_mm256_sqrt_pd(d2), rai),
                                      _mm256_loadu_pd(rb + j));
      lane_best = _mm256_min_pd(lane_best, c);
    }
    double row_best = HorizontalMin(lane_best);
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

SymMat3 CentralMomentSumsAvx2(SoaView p, const Vec3& m) {
  const __m256d mx = _mm256_set1_pd(m.x);
  const __m256d my = _mm256_set1_pd(m.y);
  const __m256d mz = _mm256_set1_pd(m.z);
  __m256d sxx = _mm256_setzero_pd(), sxy = _mm256_setzero_pd(),
          sxz = _mm256_setzero_pd(), syy = _mm256_setzero_pd(),
          syz = _mm256_setzero_pd(), szz = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= p.size; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(p.x + i), mx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(p.y + i), my);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(p.z + i), mz);
    sxx = _mm256_add_pd(sxx, _mm256_mul_pd(dx, dx));
    sxy = _mm256_add_pd(sxy, _mm256_mul_pd(dx, dy));
    sxz = _mm256_add_pd(sxz, _mm256_mul_pd(dx, dz));
    syy = _mm256_add_pd(syy, _mm256_mul_pd(dy, dy));
    syz = _mm256_add_pd(syz, _mm256_mul_pd(dy, dz));
    szz = _mm256_add_pd(szz, _mm256_mul_pd(dz, dz));
  }
  SymMat3 s{HorizontalSum(sxx), HorizontalSum(sxy), HorizontalSum(sxz),
            HorizontalSum(syy), HorizontalSum(syz), HorizontalSum(szz)};
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

void InsideBoxMaskAvx2(SoaView p, const Vec3& lo, const Vec3& hi,
                       std::uint8_t* out) {
  const __m256d lx = _mm256_set1_pd(lo.x), ly = _mm256_set1_pd(lo.y),
                lz = _mm256_set1_pd(lo.z);
  const __m256d hx = _mm256_set1_pd(hi.x), hy = _mm256_set1_pd(hi.y),
                hz = _mm256_set1_pd(hi.z);
  std::size_t i = 0;
  for (; i + 4 <= p.size; i += 4) {
    const __m256d x = _mm256_loadu_pd(p.x + i);
    const __m256d y = _mm256_loadu_pd(p.y + i);
    const __m256d z = _mm256_loadu_pd(p.z + i);
    __m256d in = _mm256_and_pd(_mm256_cmp_pd(x, lx, _CMP_GE_OQ),
                               _mm256_cmp_pd(x, hx, _CMP_LE_OQ));
    in = _mm256_and_pd(in, _mm256_cmp_pd(y, ly, _CMP_GE_OQ));
    in = _mm256_and_pd(in, _mm256_cmp_pd(y, hy, _CMP_LE_OQ));
    in = _mm256_and_pd(in, _mm256_cmp_pd(z, lz, _CMP_GE_OQ));
    in = _mm256_and_pd(in, _mm256_cmp_pd(z, hz, _CMP_LE_OQ));
    const int bits = _mm256_movemask_pd(in);
    for (int lane = 0; lane < 4; ++lane) {
      out[i + lane] = static_cast<std::uint8_t>((bits >> lane) & 1);
    }
  }
  for (; i < p.size; ++i) {
    out[i] = (p.x[i] >= lo.x && p.x[i] <= hi.x && p.y[i] >= lo.y &&
              p.y[i] <= hi.y && p.z[i] >= lo.z && p.z[i] <= hi.z)
                 ? 1
                 : 0;
  }
}

}  // namespace

const KernelTable kAvx2Kernels = {
    &SquaredDistancesAvx2, &ArgMaxDotAvx2, &MinPairClearanceAvx2,
    &CentralMomentSumsAvx2, &InsideBoxMaskAvx2};

}  // namespace obbscene::simd::internal
