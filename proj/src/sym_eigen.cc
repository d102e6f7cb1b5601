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

#include "obbscene/sym_eigen.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace obbscene {
namespace {

constexpr double kClusterTolerance = 1e-8;

// Unit eigenvector for an eigenvalue of multiplicity one: the largest cross
// product of two rows of (A - lambda I).
Vec3 EigenvectorFromRows(const Mat3& a, double lambda) {
  const Vec3 r0{a(0, 0) - lambda, a(0, 1), a(0, 2)};
  const Vec3 r1{a(0, 1), a(1, 1) - lambda, a(1, 2)};
  const Vec3 r2{a(0, 2), a(1, 2), a(2, 2) - lambda};
  const Vec3 c01 = Cross(r0, r1);
  const Vec3 c02 = Cross(r0, r2);
  const Vec3 c12 = Cross(r1, r2);
  const double d01 = SquaredNorm(c01);
  const double d02 = SquaredNorm(c02);
  const double d12 = SquaredNorm(c12);
  if (d01 >= d02 && d01 >= d12) return c01 / std::sqrt(d01);
  if (d02 >= d12) return c02 / std::sqrt(d02);
  return c12 / std::sqrt(d12);
}

// Any orthonormal pair (u, v) spanning the complement of unit w.
void OrthogonalComplement(const Vec3& w, Vec3& u, Vec3& v) {
  if (std::abs(w.x) > std::abs(w.y)) {
    const double inv = 1.0 / std::sqrt(w.x * w.x + w.z * w.z);
    u = {-w.z * inv, 0.0, w.x * inv};
  } else {
    const double inv = 1.0 / std::sqrt(w.y * w.y + w.z * w.z);
    u = {0.0, w.z * inv, -w.y * inv};
  }
  v = Cross(w, u);
}

// Eigenpairs of A restricted to the plane orthogonal to unit `known`, by one
// Jacobi rotation of the projected 2x2 block. Accurate however close the two
// eigenvalues are.
void EigenpairsInComplement(const Mat3& a, const Vec3& known,
                            std::array<double, 2>& values,
                            std::array<Vec3, 2>& vectors) {
  Vec3 u, v;
  OrthogonalComplement(known, u, v);
  const Vec3 au = a * u;
  const Vec3 av = a * v;
  const double m00 = Dot(u, au);
  const double m01 = 0.5 * (Dot(u, av) + Dot(v, au));
  const double m11 = Dot(v, av);
  if (m01 == 0.0) {
    values = {m00, m11};
    vectors = {u, v};
    return;
  }
  const double theta = (m11 - m00) / (2.0 * m01);
  const double t = std::copysign(1.0, theta) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  values = {m00 - t * m01, m11 + t * m01};
  vectors = {c * u - s * v, s * u + c * v};
}

EigenBasis Finalize(std::array<double, 3> values, std::array<Vec3, 3> vectors) {
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  EigenBasis out;
  for (int i = 0; i < 3; ++i) {
    out.values[i] = values[order[i]];
    out.vectors[i] = CanonicalizeSign(vectors[order[i]]);
  }
  return out;
}

bool Isotropic(const std::array<double, 3>& sorted) {
  const double scale = std::max(std::abs(sorted[0]), std::abs(sorted[2]));
  return sorted[2] - sorted[0] <= kClusterTolerance * scale;
}

}  // namespace

Vec3 CanonicalizeSign(const Vec3& v) {
  std::size_t axis = 2;
  if (std::abs(v.y) > std::abs(v[axis])) axis = 1;
  if (std::abs(v.x) > std::abs(v[axis])) axis = 0;
  return v[axis] < 0.0 ? -v : v;
}

EigenBasis EigenSym3Jacobi(const SymMat3& m) {
  Mat3 a = m.ToMat3();
  Mat3 v = Mat3::Identity();
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) +
                       a(1, 2) * a(1, 2);
    const double diag = a(0, 0) * a(0, 0) + a(1, 1) * a(1, 1) +
                        a(2, 2) * a(2, 2);
    if (off == 0.0 || off <= 1e-36 * diag) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // a <- J^T a J with J the (p, q) plane rotation.
        for (int k = 0; k < 3; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  return Finalize({a(0, 0), a(1, 1), a(2, 2)}, {v.col(0), v.col(1), v.col(2)});
}

EigenBasis eigen_sym3(const SymMat3& m) {
  const double max_abs =
      std::max({std::abs(m.xx), std::abs(m.xy), std::abs(m.xz),
                std::abs(m.yy), std::abs(m.yz), std::abs(m.zz)});
  if (max_abs == 0.0) {
    return Finalize({0.0, 0.0, 0.0},
                    {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
  }
  // Work on the scaled matrix to keep the cubic well conditioned.
  const double inv = 1.0 / max_abs;
  const SymMat3 s{m.xx * inv, m.xy * inv, m.xz * inv,
                  m.yy * inv, m.yz * inv, m.zz * inv};
  const double off_sq = s.xy * s.xy + s.xz * s.xz + s.yz * s.yz;
  if (off_sq == 0.0) {
    return Finalize({m.xx, m.yy, m.zz},
                    {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
  }

  const double q = s.Trace() / 3.0;
  const double b00 = s.xx - q;
  const double b11 = s.yy - q;
  const double b22 = s.zz - q;
  const double p =
      std::sqrt((b00 * b00 + b11 * b11 + b22 * b22 + 2.0 * off_sq) / 6.0);
  const double c00 = b11 * b22 - s.yz * s.yz;
  const double c01 = s.xy * b22 - s.yz * s.xz;
  const double c02 = s.xy * s.yz - b11 * s.xz;
  const double det = (b00 * c00 - s.xy * c01 + s.xz * c02) / (p * p * p);
  const double half_det = std::clamp(0.5 * det, -1.0, 1.0);
  const double angle = std::acos(half_det) / 3.0;
  constexpr double kTwoThirdsPi = 2.0 * std::numbers::pi / 3.0;
  const double beta2 = 2.0 * std::cos(angle);
  const double beta0 = 2.0 * std::cos(angle + kTwoThirdsPi);
  const double beta1 = -(beta0 + beta2);
  const std::array<double, 3> scaled = {q + p * beta0, q + p * beta1,
                                        q + p * beta2};
  if (Isotropic(scaled)) return EigenSym3Jacobi(m);

  const Mat3 a = s.ToMat3();
  // The eigenvalue farther from the middle one is accurate from the closed
  // form even when the other two nearly coincide; the remaining pair comes
  // from the complement plane.
  const std::size_t isolated = half_det >= 0.0 ? 2 : 0;
  const Vec3 w = EigenvectorFromRows(a, scaled[isolated]);
  std::array<double, 2> pair_values;
  std::array<Vec3, 2> pair_vectors;
  EigenpairsInComplement(a, w, pair_values, pair_vectors);
  return Finalize({Dot(w, a * w) * max_abs, pair_values[0] * max_abs,
                   pair_values[1] * max_abs},
                  {w, pair_vectors[0], pair_vectors[1]});
}

}  // namespace obbscene
