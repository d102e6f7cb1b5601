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

#include "obbscene/bounding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "obbscene/collision.h"
#include "obbscene/error.h"
#include "obbscene/neighborhood.h"
#include "obbscene/sym_eigen.h"

namespace obbscene {
namespace {

constexpr double kFrameTolerance = 1e-9;
constexpr double kClusterTolerance = 1e-8;
constexpr double kLinearRatio = 1e-12;
// Relative inflation applied to covering radii so that rounding in the
// corner distances cannot produce a positive certificate.
constexpr double kRadiusInflation = 1e-14;
constexpr double kMinRadius = 1e-12;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double Cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain, collinear points dropped.
std::vector<Vec2> Hull2(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && Cross2(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && Cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Orientation within the plane spanned by orthonormal (a, b) that minimizes
// the bounding rectangle of the projected points. Returns the two in-plane
// axes with the longer extent first.
void MinAreaRectangleAxes(std::span<const Point3> points, const Vec3& a,
                          const Vec3& b, Vec3& first, Vec3& second) {
  std::vector<Vec2> projected;
  projected.reserve(points.size());
  for (const Point3& p : points) projected.push_back({Dot(p, a), Dot(p, b)});
  const std::vector<Vec2> hull = Hull2(std::move(projected));

  Vec2 best_dir{1.0, 0.0};
  double best_area = std::numeric_limits<double>::infinity();
  double best_w = 0.0;
  double best_h = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2& p = hull[i];
    const Vec2& q = hull[(i + 1) % hull.size()];
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    if (len == 0.0) continue;
    const Vec2 e{(q.x - p.x) / len, (q.y - p.y) / len};
    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
    double lo_v = lo_u, hi_v = -lo_u;
    for (const Vec2& h : hull) {
      const double u = h.x * e.x + h.y * e.y;
      const double v = -h.x * e.y + h.y * e.x;
      lo_u = std::min(lo_u, u);
      hi_u = std::max(hi_u, u);
      lo_v = std::min(lo_v, v);
      hi_v = std::max(hi_v, v);
    }
    const double w = hi_u - lo_u;
    const double h = hi_v - lo_v;
    if (w * h < best_area) {
      best_area = w * h;
      best_dir = e;
      best_w = w;
      best_h = h;
    }
  }
  const Vec3 u = best_dir.x * a + best_dir.y * b;
  const Vec3 v = -best_dir.y * a + best_dir.x * b;
  if (best_w >= best_h) {
    first = u;
    second = v;
  } else {
    first = v;
    second = u;
  }
}

Vec3 CompleteAgainstCanonical(const Vec3& x) {
  const Vec3 canonical[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const Vec3& e : canonical) {
    const Vec3 r = e - Dot(e, x) * x;
    if (Norm(r) > 1e-3) return Normalized(r);
  }
  return Normalized(canonical[2] - Dot(canonical[2], x) * x);
}

}  // namespace

double Aabb::Volume() const {
  const Vec3 e = Extent();
  return e.x * e.y * e.z;
}

bool Aabb::Contains(const Point3& p, double slack) const {
  return p.x >= min.x - slack && p.x <= max.x + slack && p.y >= min.y - slack &&
         p.y <= max.y + slack && p.z >= min.z - slack && p.z <= max.z + slack;
}

double Obb::Volume() const {
  return 8.0 * half_extents.x * half_extents.y * half_extents.z;
}

Vec3 Obb::ToLocal(const Point3& p) const {
  return rotation.Transposed() * (p - center);
}

Point3 Obb::ToWorld(const Vec3& local) const {
  return center + rotation * local;
}

bool Obb::Contains(const Point3& p, double slack) const {
  const Vec3 l = ToLocal(p);
  return std::abs(l.x) <= half_extents.x + slack &&
         std::abs(l.y) <= half_extents.y + slack &&
         std::abs(l.z) <= half_extents.z + slack;
}

std::vector<Point3> Obb::Corners() const {
  std::vector<Point3> out;
  out.reserve(8);
  for (int i = 0; i < 8; ++i) {
    const Vec3 local{(i & 1) ? half_extents.x : -half_extents.x,
                     (i & 2) ? half_extents.y : -half_extents.y,
                     (i & 4) ? half_extents.z : -half_extents.z};
    out.push_back(ToWorld(local));
  }
  return out;
}

std::size_t Obb::LongestAxis() const {
  std::size_t axis = 2;
  if (half_extents.y > half_extents[axis]) axis = 1;
  if (half_extents.x > half_extents[axis]) axis = 0;
  return axis;
}

Obb Obb::Translated(const Vec3& offset) const {
  Obb out = *this;
  out.center += offset;
  return out;
}

Obb Obb::FromAabb(const Aabb& box) {
  Obb out;
  out.center = (box.min + box.max) * 0.5;
  out.half_extents = (box.max - box.min) * 0.5;
  return out;
}

void Obb::Validate() const {
  if (!IsFinite(center) || !IsFinite(half_extents) || half_extents.x < 0.0 ||
      half_extents.y < 0.0 || half_extents.z < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "box needs a finite center and non-negative half extents");
  }
  const Mat3 rtr = rotation.Transposed() * rotation;
  double err = 0.0;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      err = std::max(err, std::abs(rtr(r, c) - (r == c ? 1.0 : 0.0)));
    }
  }
  if (!(err <= kFrameTolerance) ||
      !(std::abs(rotation.Determinant() - 1.0) <= kFrameTolerance)) {
    throw Error(ErrorCode::kInvalidArgument,
                "box rotation must be orthonormal and right-handed");
  }
}

Aabb fit_aabb(std::span<const Point3> points) {
  if (points.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot fit a box to no points");
  }
  Aabb box{points.front(), points.front()};
  for (const Point3& p : points) {
    box.min = Min(box.min, p);
    box.max = Max(box.max, p);
  }
  return box;
}

Obb fit_obb(std::span<const Point3> points) {
  if (points.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot fit a box to no points");
  }
  const EigenBasis basis = eigen_sym3(covariance(points));
  const auto& lam = basis.values;
  const auto& vec = basis.vectors;

  Vec3 x{1, 0, 0}, y{0, 1, 0}, z{0, 0, 1};
  const double top = lam[2];
  const bool isotropic = !(top > 0.0) || lam[2] - lam[0] <= kClusterTolerance * top;
  if (isotropic) {
    // Single point, coincident points, or no preferred direction.
  } else if (lam[1] <= kLinearRatio * top) {
    x = vec[2];
    y = CompleteAgainstCanonical(x);
    z = Cross(x, y);
  } else if (lam[2] - lam[1] <= kClusterTolerance * top) {
    z = vec[0];
    MinAreaRectangleAxes(points, vec[2], vec[1], x, y);
  } else if (lam[1] - lam[0] <= kClusterTolerance * top) {
    x = vec[2];
    MinAreaRectangleAxes(points, vec[1], vec[0], y, z);
  } else {
    x = vec[2];
    y = vec[1];
    z = vec[0];
  }
  if (Dot(Cross(x, y), z) < 0.0) z = -z;

  Obb box;
  box.rotation = Mat3::FromColumns(x, y, z);
  Vec3 lo{std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
  Vec3 hi = -lo;
  for (const Point3& p : points) {
    const Vec3 l{Dot(p, x), Dot(p, y), Dot(p, z)};
    lo = Min(lo, l);
    hi = Max(hi, l);
  }
  box.center = box.rotation * ((lo + hi) * 0.5);
  box.half_extents = (hi - lo) * 0.5;
  return box;
}

ConvexPolytope obb_to_polytope(const Obb& box) {
  return ConvexPolytope(box.Corners());
}

SphereSet cover_with_spheres(const Obb& box, std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sphere count must be >= 1");
  }
  const std::size_t axis = box.LongestAxis();
  Vec3 slab_half = box.half_extents;
  slab_half[axis] = box.half_extents[axis] / static_cast<double>(n);
  const double radius =
      std::max(Norm(slab_half) * (1.0 + kRadiusInflation), kMinRadius);

  SphereSet set;
  set.spheres.reserve(n);
  set.coverage_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 local;
    local[axis] = -box.half_extents[axis] +
                  (2.0 * static_cast<double>(i) + 1.0) * slab_half[axis];
    const Sphere s{box.ToWorld(local), radius};
    set.spheres.push_back(s);
    for (int c = 0; c < 8; ++c) {
      const Vec3 corner{local.x + ((c & 1) ? slab_half.x : -slab_half.x),
                        local.y + ((c & 2) ? slab_half.y : -slab_half.y),
                        local.z + ((c & 4) ? slab_half.z : -slab_half.z)};
      set.coverage_slack = std::max(
          set.coverage_slack, Distance(box.ToWorld(corner), s.center) - radius);
    }
  }
  return set;
}

}  // namespace obbscene
