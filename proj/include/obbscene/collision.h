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

#ifndef OBBSCENE_COLLISION_H_
#define OBBSCENE_COLLISION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "obbscene/bounding.h"
#include "obbscene/simd/kernels.h"
#include "obbscene/vec3.h"

namespace obbscene {

// Convex hull of a finite vertex set. Only vertices are stored; support
// queries are all GJK needs.
class ConvexPolytope {
 public:
  ConvexPolytope() = default;
  // Throws Error(kEmptyInput) for no vertices and Error(kInvalidArgument)
  // for non-finite coordinates.
  explicit ConvexPolytope(std::vector<Point3> vertices);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Point3>& vertices() const { return vertices_; }
  const Point3& vertex(std::size_t i) const { return vertices_[i]; }
  simd::SoaView soa() const { return soa_.view(); }

  // Number of vertices strictly inside the hull (not on its boundary).
  // Exhaustive over candidate facets, intended for small diagnostics.
  std::size_t InteriorVertexCount() const;

 private:
  std::vector<Point3> vertices_;
  simd::PointsSoa soa_;
};

// Vertex maximizing <v, direction>; ties go to the lowest index.
// Throws Error(kInvalidDirection) for a zero or non-finite direction.
Point3 support(const ConvexPolytope& p, const Vec3& direction);
std::size_t SupportIndex(const ConvexPolytope& p, const Vec3& direction);

// {a - b} over all vertex pairs (a-major order), exact duplicates removed.
ConvexPolytope minkowski_difference(const ConvexPolytope& a,
                                    const ConvexPolytope& b);

struct DistanceResult {
  bool colliding = false;
  double distance = 0.0;  // 0 when colliding
  Point3 witness_a;       // meaningful only when not colliding
  Point3 witness_b;
  int iterations = 0;
};

struct GjkOptions {
  double tolerance = 1e-10;
  int max_iterations = 128;
};

// GJK over the Minkowski difference a - b with the signed-volume distance
// sub-algorithm. Stops when |v|^2 - <v, w> <= tol * max(1, |v|^2), where v is
// the current closest point and w the new support point. Reports a collision
// when the simplex encloses the origin or |v| <= tol.
// Throws NonConvergenceError after max_iterations.
DistanceResult gjk_query(const ConvexPolytope& a, const ConvexPolytope& b,
                         const GjkOptions& options = {});

// Separating axis test over the 15 box-pair candidates (3 + 3 face axes, 9
// edge cross products; cross products shorter than 1e-12 are skipped).
// Returns true when the boxes are disjoint.
bool sat_boxes(const Obb& a, const Obb& b);

struct SafetyMargin {
  double delta = 0.0;  // m, >= 0
};

// |c2 - c1| - r1 - r2 - delta; >= 0 means no collision.
double sphere_clearance(const Sphere& s1, const Sphere& s2,
                        SafetyMargin margin = {});

// Minimum pairwise sphere_clearance. Throws Error(kEmptyInput) for an empty
// set.
double sphere_set_clearance(const SphereSet& a, const SphereSet& b,
                            SafetyMargin margin = {});

// n_rob * n_env * n_checkpoints. Throws Error(kInvalidArgument) on overflow.
std::uint64_t constraint_count(std::uint64_t n_rob, std::uint64_t n_env,
                               std::uint64_t n_checkpoints);

// Penetration depth via the expanding polytope algorithm is not provided;
// always throws Error(kNotImplemented).
double epa_penetration_depth(const ConvexPolytope& a, const ConvexPolytope& b);

}  // namespace obbscene

#endif  // OBBSCENE_COLLISION_H_
