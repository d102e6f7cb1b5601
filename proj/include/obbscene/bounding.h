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

#ifndef OBBSCENE_BOUNDING_H_
#define OBBSCENE_BOUNDING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "obbscene/vec3.h"

namespace obbscene {

class ConvexPolytope;

struct Aabb {
  Point3 min;
  Point3 max;

  Vec3 Extent() const { return max - min; }
  double Volume() const;
  bool Contains(const Point3& p, double slack = 0.0) const;

  friend bool operator==(const Aabb&, const Aabb&) = default;
};

// Oriented box. Columns of `rotation` are the box axes in the world frame
// (right-handed); half_extents are measured along those axes.
struct Obb {
  Point3 center;
  Mat3 rotation = Mat3::Identity();
  Vec3 half_extents;

  double Volume() const;
  Vec3 ToLocal(const Point3& p) const;
  Point3 ToWorld(const Vec3& local) const;
  bool Contains(const Point3& p, double slack = 0.0) const;
  // Corners in the order (-,-,-), (+,-,-), (-,+,-), (+,+,-), (-,-,+), ...
  std::vector<Point3> Corners() const;
  // Index of the longest axis; ties prefer z, then y, then x.
  std::size_t LongestAxis() const;
  Obb Translated(const Vec3& offset) const;

  static Obb FromAabb(const Aabb& box);
  // Throws Error(kInvalidArgument) on a non-orthonormal or left-handed
  // rotation (tolerance 1e-9), negative or non-finite extents.
  void Validate() const;

  friend bool operator==(const Obb&, const Obb&) = default;
};

struct Sphere {
  Point3 center;
  double radius = 0.0;

  friend bool operator==(const Sphere&, const Sphere&) = default;
};

struct SphereSet {
  std::vector<Sphere> spheres;
  // max over source-box slab corners of (distance to the slab's sphere
  // center - radius); <= 0 certifies that the spheres cover the box.
  double coverage_slack = 0.0;

  friend bool operator==(const SphereSet&, const SphereSet&) = default;
};

// Componentwise min/max. Throws Error(kEmptyInput) for no points.
Aabb fit_aabb(std::span<const Point3> points);

// Box aligned with the principal axes of the point covariance: largest
// eigenvalue -> local x, middle -> y, smallest -> z, z flipped if needed for
// right-handedness. Extents come from projected min/max, so every point is
// contained. Where two eigenvalues coincide (relative 1e-8) the in-plane
// orientation is the minimum-area rectangle of the projected points; a fully
// isotropic or single-point set uses the world axes. Lines complete their
// frame by Gram-Schmidt against +x, +y, +z.
// Throws Error(kEmptyInput) for no points.
Obb fit_obb(std::span<const Point3> points);

// The eight world-frame corners as a vertex polytope.
ConvexPolytope obb_to_polytope(const Obb& box);

// Splits the longest axis into n equal slabs and circumscribes a sphere
// around each slab. Radii are inflated by a few ulps so the stored coverage
// certificate is never positive. Throws Error(kInvalidArgument) for n == 0.
SphereSet cover_with_spheres(const Obb& box, std::size_t n);

}  // namespace obbscene

#endif  // OBBSCENE_BOUNDING_H_
