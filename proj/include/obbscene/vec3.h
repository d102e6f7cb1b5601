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

#ifndef OBBSCENE_VEC3_H_
#define OBBSCENE_VEC3_H_

#include <array>
#include <cmath>
#include <cstddef>

namespace obbscene {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const {
    return i == 0 ? x : (i == 1 ? y : z);
  }
  constexpr double& operator[](std::size_t i) {
    return i == 0 ? x : (i == 1 ? y : z);
  }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

// Points and directions share a representation; the alias documents intent.
using Point3 = Vec3;

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) {
  return {a.x / s, a.y / s, a.z / s};
}

constexpr double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 Cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

constexpr double SquaredNorm(const Vec3& a) { return Dot(a, a); }
inline double Norm(const Vec3& a) { return std::sqrt(SquaredNorm(a)); }

// Evaluated as ((dx*dx + dy*dy) + dz*dz), the same order the distance
// kernels use, so scalar call sites and kernels agree bit for bit.
constexpr double SquaredDistance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}
inline double Distance(const Vec3& a, const Vec3& b) {
  return std::sqrt(SquaredDistance(a, b));
}

inline Vec3 Normalized(const Vec3& a) { return a / Norm(a); }

inline bool IsFinite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

constexpr Vec3 Min(const Vec3& a, const Vec3& b) {
  return {a.x < b.x ? a.x : b.x, a.y < b.y ? a.y : b.y,
          a.z < b.z ? a.z : b.z};
}
constexpr Vec3 Max(const Vec3& a, const Vec3& b) {
  return {a.x > b.x ? a.x : b.x, a.y > b.y ? a.y : b.y,
          a.z > b.z ? a.z : b.z};
}

// Dense 3x3 matrix, row-major.
class Mat3 {
 public:
  constexpr Mat3() = default;
  explicit constexpr Mat3(const std::array<double, 9>& row_major)
      : m_(row_major) {}

  static constexpr Mat3 Identity() {
    return Mat3({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0});
  }
  static constexpr Mat3 FromColumns(const Vec3& c0, const Vec3& c1,
                                    const Vec3& c2) {
    return Mat3({c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z});
  }

  constexpr double operator()(std::size_t r, std::size_t c) const {
    return m_[r * 3 + c];
  }
  constexpr double& operator()(std::size_t r, std::size_t c) {
    return m_[r * 3 + c];
  }

  constexpr Vec3 col(std::size_t c) const {
    return {m_[c], m_[3 + c], m_[6 + c]};
  }
  constexpr Vec3 row(std::size_t r) const {
    return {m_[3 * r], m_[3 * r + 1], m_[3 * r + 2]};
  }
  constexpr void set_col(std::size_t c, const Vec3& v) {
    m_[c] = v.x;
    m_[3 + c] = v.y;
    m_[6 + c] = v.z;
  }

  constexpr Mat3 Transposed() const {
    return Mat3({m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5],
                 m_[8]});
  }

  constexpr double Determinant() const {
    return Dot(col(0), Cross(col(1), col(2)));
  }

  constexpr const std::array<double, 9>& row_major() const { return m_; }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

 private:
  std::array<double, 9> m_{};
};

constexpr Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {Dot(m.row(0), v), Dot(m.row(1), v), Dot(m.row(2), v)};
}

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      out(r, c) = Dot(a.row(r), b.col(c));
    }
  }
  return out;
}

// Symmetric 3x3 matrix stored by its six independent entries.
struct SymMat3 {
  double xx = 0.0;
  double xy = 0.0;
  double xz = 0.0;
  double yy = 0.0;
  double yz = 0.0;
  double zz = 0.0;

  static constexpr SymMat3 Diagonal(double a, double b, double c) {
    return {a, 0.0, 0.0, b, 0.0, c};
  }

  constexpr double operator()(std::size_t r, std::size_t c) const {
    if (r > c) {
      const std::size_t t = r;
      r = c;
      c = t;
    }
    if (r == 0) return c == 0 ? xx : (c == 1 ? xy : xz);
    if (r == 1) return c == 1 ? yy : yz;
    return zz;
  }

  constexpr double Trace() const { return xx + yy + zz; }

  constexpr Mat3 ToMat3() const {
    return Mat3({xx, xy, xz, xy, yy, yz, xz, yz, zz});
  }

  friend constexpr bool operator==(const SymMat3&, const SymMat3&) = default;
};

}  // namespace obbscene

#endif  // OBBSCENE_VEC3_H_
