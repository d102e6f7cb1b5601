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

#include "obbscene/collision.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <tuple>

#include "obbscene/error.h"

namespace obbscene {

ConvexPolytope::ConvexPolytope(std::vector<Point3> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) {
    throw Error(ErrorCode::kEmptyInput, "polytope needs at least one vertex");
  }
  for (const Point3& p : vertices_) {
    if (!IsFinite(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "polytope vertices must be finite");
    }
  }
  soa_ = simd::PointsSoa(vertices_);
}

std::size_t ConvexPolytope::InteriorVertexCount() const {
  const std::size_t n = vertices_.size();
  if (n < 5) return 0;
  double scale = 0.0;
  for (const Point3& p : vertices_) scale = std::max(scale, Norm(p));
  const double eps = 1e-12 * std::max(scale, 1.0);

  struct Plane {
    Vec3 normal;
    double offset;
  };
  std::vector<Plane> facets;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 nrm = Cross(vertices_[j] - vertices_[i],
                         vertices_[k] - vertices_[i]);
        const double len = Norm(nrm);
        if (len <= eps * eps) continue;
        nrm = nrm / len;
        const double off = Dot(nrm, vertices_[i]);
        bool above = false;
        bool below = false;
        for (const Point3& p : vertices_) {
          const double s = Dot(nrm, p) - off;
          if (s > eps) above = true;
          if (s < -eps) below = true;
        }
        if (above && below) continue;
        facets.push_back(above ? Plane{-nrm, -off} : Plane{nrm, off});
      }
    }
  }
  if (facets.empty()) return 0;
  std::size_t interior = 0;
  for (const Point3& p : vertices_) {
    const bool inside = std::all_of(facets.begin(), facets.end(),
                                    [&](const Plane& f) {
                                      return Dot(f.normal, p) - f.offset < -eps;
                                    });
    if (inside) ++interior;
  }
  return interior;
}

std::size_t SupportIndex(const ConvexPolytope& p, const Vec3& direction) {
  if (!IsFinite(direction) || SquaredNorm(direction) == 0.0) {
    throw Error(ErrorCode::kInvalidDirection,
                "support direction must be finite and nonzero");
  }
  return simd::ArgMaxDot(p.soa(), direction);
}

Point3 support(const ConvexPolytope& p, const Vec3& direction) {
  return p.vertex(SupportIndex(p, direction));
}

ConvexPolytope minkowski_difference(const ConvexPolytope& a,
                                    const ConvexPolytope& b) {
  std::vector<Point3> out;
  out.reserve(a.size() * b.size());
  std::set<std::tuple<double, double, double>> seen;
  for (const Point3& va : a.vertices()) {
    for (const Point3& vb : b.vertices()) {
      const Point3 d = va - vb;
      if (seen.insert({d.x, d.y, d.z}).second) out.push_back(d);
    }
  }
  return ConvexPolytope(std::move(out));
}

namespace {

struct SimplexVertex {
  Vec3 w;  // a - b
  Vec3 a;
  Vec3 b;
};

// Simplex with barycentric weights of its closest point to the origin.
struct Simplex {
  std::array<SimplexVertex, 4> v;
  std::array<double, 4> lambda{};
  int size = 0;

  Vec3 Closest() const {
    Vec3 out;
    for (int i = 0; i < size; ++i) out += lambda[i] * v[i].w;
    return out;
  }
};

bool SameSign(double a, double b) { return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0); }

Simplex Make1(const SimplexVertex& s) {
  Simplex out;
  out.v[0] = s;
  out.lambda[0] = 1.0;
  out.size = 1;
  return out;
}

Simplex ClosestOnSegment(const SimplexVertex& s1, const SimplexVertex& s2) {
  const Vec3 t = s2.w - s1.w;
  const double tt = Dot(t, t);
  if (tt == 0.0) return Make1(s1);
  const double u = -Dot(s1.w, t) / tt;
  if (u <= 0.0) return Make1(s1);
  if (u >= 1.0) return Make1(s2);
  Simplex out;
  out.v[0] = s1;
  out.v[1] = s2;
  out.lambda[0] = 1.0 - u;
  out.lambda[1] = u;
  out.size = 2;
  return out;
}

// Keeps whichever candidate is closer to the origin.
void KeepCloser(Simplex& best, double& best_d2, const Simplex& cand) {
  const double d2 = SquaredNorm(cand.Closest());
  if (d2 < best_d2) {
    best = cand;
    best_d2 = d2;
  }
}

Simplex ClosestOnTriangle(const SimplexVertex& s1, const SimplexVertex& s2,
                          const SimplexVertex& s3) {
  const std::array<const SimplexVertex*, 3> s = {&s1, &s2, &s3};
  const Vec3 n = Cross(s2.w - s1.w, s3.w - s1.w);
  const double nn = Dot(n, n);

  std::array<bool, 3> test_edge = {true, true, true};
  if (nn > 0.0) {
    const Vec3 p0 = n * (Dot(s1.w, n) / nn);
    std::size_t k = 0;
    if (std::abs(n.y) > std::abs(n[k])) k = 1;
    if (std::abs(n.z) > std::abs(n[k])) k = 2;
    const std::size_t i = (k + 1) % 3;
    const std::size_t j = (k + 2) % 3;
    const auto area = [i, j](const Vec3& a, const Vec3& b, const Vec3& c) {
      return (b[i] - a[i]) * (c[j] - a[j]) - (b[j] - a[j]) * (c[i] - a[i]);
    };
    const double mu = area(s1.w, s2.w, s3.w);
    const std::array<double, 3> c = {area(p0, s2.w, s3.w),
                                     area(s1.w, p0, s3.w),
                                     area(s1.w, s2.w, p0)};
    if (SameSign(mu, c[0]) && SameSign(mu, c[1]) && SameSign(mu, c[2])) {
      Simplex out;
      for (int m = 0; m < 3; ++m) {
        out.v[m] = *s[m];
        out.lambda[m] = c[m] / mu;
      }
      out.size = 3;
      return out;
    }
    for (int m = 0; m < 3; ++m) test_edge[m] = !SameSign(mu, c[m]);
  }
  Simplex best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int m = 0; m < 3; ++m) {
    if (!test_edge[m]) continue;
    // Edge opposite vertex m.
    KeepCloser(best, best_d2,
               ClosestOnSegment(*s[(m + 1) % 3], *s[(m + 2) % 3]));
  }
  return best;
}

double SignedVolume(const Vec3& a, const Vec3& b, const Vec3& c,
                    const Vec3& d) {
  return Dot(b - a, Cross(c - a, d - a));
}

Simplex ClosestOnTetrahedron(const Simplex& t) {
  const Vec3 o;
  const Vec3& w1 = t.v[0].w;
  const Vec3& w2 = t.v[1].w;
  const Vec3& w3 = t.v[2].w;
  const Vec3& w4 = t.v[3].w;
  const double vol = SignedVolume(w1, w2, w3, w4);
  const std::array<double, 4> c = {
      SignedVolume(o, w2, w3, w4), SignedVolume(w1, o, w3, w4),
      SignedVolume(w1, w2, o, w4), SignedVolume(w1, w2, w3, o)};
  if (vol != 0.0 && SameSign(vol, c[0]) && SameSign(vol, c[1]) &&
      SameSign(vol, c[2]) && SameSign(vol, c[3])) {
    Simplex out = t;
    for (int m = 0; m < 4; ++m) out.lambda[m] = c[m] / vol;
    return out;
  }
  Simplex best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int m = 0; m < 4; ++m) {
    if (vol != 0.0 && SameSign(vol, c[m])) continue;
    std::array<int, 3> face{};
    int f = 0;
    for (int q = 0; q < 4; ++q) {
      if (q != m) face[f++] = q;
    }
    KeepCloser(best, best_d2,
               ClosestOnTriangle(t.v[face[0]], t.v[face[1]], t.v[face[2]]));
  }
  return best;
}

Simplex Reduce(const Simplex& s) {
  switch (s.size) {
    case 1:
      return Make1(s.v[0]);
    case 2:
      return ClosestOnSegment(s.v[0], s.v[1]);
    case 3:
      return ClosestOnTriangle(s.v[0], s.v[1], s.v[2]);
    default:
      return ClosestOnTetrahedron(s);
  }
}

DistanceResult Separated(const Simplex& s, int iterations) {
  DistanceResult r;
  r.colliding = false;
  for (int i = 0; i < s.size; ++i) {
    r.witness_a += s.lambda[i] * s.v[i].a;
    r.witness_b += s.lambda[i] * s.v[i].b;
  }
  r.distance = Norm(s.Closest());
  r.iterations = iterations;
  return r;
}

DistanceResult Colliding(int iterations) {
  DistanceResult r;
  r.colliding = true;
  r.distance = 0.0;
  r.iterations = iterations;
  return r;
}

}  // namespace

DistanceResult gjk_query(const ConvexPolytope& a, const ConvexPolytope& b,
                         const GjkOptions& options) {
  if (!(options.tolerance > 0.0) || options.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "GJK needs tolerance > 0 and max_iterations >= 1");
  }
  const double tol = options.tolerance;
  Simplex simplex = Make1({a.vertex(0) - b.vertex(0), a.vertex(0), b.vertex(0)});
  Vec3 v = simplex.v[0].w;
  if (Norm(v) <= tol) return Colliding(0);

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const double vv = Dot(v, v);
    const std::size_t ia = simd::ArgMaxDot(a.soa(), -v);
    const std::size_t ib = simd::ArgMaxDot(b.soa(), v);
    const SimplexVertex w{a.vertex(ia) - b.vertex(ib), a.vertex(ia),
                          b.vertex(ib)};
    if (vv - Dot(v, w.w) <= tol * std::max(1.0, vv)) {
      return Separated(simplex, iter);
    }
    for (int i = 0; i < simplex.size; ++i) {
      if (simplex.v[i].w == w.w) return Separated(simplex, iter);
    }
    Simplex grown = simplex;
    grown.v[grown.size++] = w;
    const Simplex reduced = Reduce(grown);
    if (reduced.size == 4) return Colliding(iter);
    const Vec3 next = reduced.Closest();
    const double next_vv = Dot(next, next);
    if (std::sqrt(next_vv) <= tol) return Colliding(iter);
    // No strict progress: rounding has taken over, keep the last simplex.
    if (next_vv >= vv) return Separated(simplex, iter);
    simplex = reduced;
    v = next;
  }
  throw NonConvergenceError(
      "GJK did not converge within " + std::to_string(options.max_iterations) +
          " iterations",
      Norm(v), options.max_iterations);
}

bool sat_boxes(const Obb& a, const Obb& b) {
  const Vec3 t = b.center - a.center;
  const std::array<Vec3, 3> ax = {a.rotation.col(0), a.rotation.col(1),
                                  a.rotation.col(2)};
  const std::array<Vec3, 3> bx = {b.rotation.col(0), b.rotation.col(1),
                                  b.rotation.col(2)};
  const auto separates = [&](const Vec3& axis) {
    double ra = 0.0;
    double rb = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      ra += a.half_extents[i] * std::abs(Dot(ax[i], axis));
      rb += b.half_extents[i] * std::abs(Dot(bx[i], axis));
    }
    return std::abs(Dot(t, axis)) > ra + rb;
  };
  for (const Vec3& axis : ax) {
    if (separates(axis)) return true;
  }
  for (const Vec3& axis : bx) {
    if (separates(axis)) return true;
  }
  for (const Vec3& u : ax) {
    for (const Vec3& w : bx) {
      const Vec3 axis = Cross(u, w);
      if (Norm(axis) < 1e-12) continue;
      if (separates(axis)) return true;
    }
  }
  return false;
}

double sphere_clearance(const Sphere& s1, const Sphere& s2,
                        SafetyMargin margin) {
  return Distance(s2.center, s1.center) - s1.radius - s2.radius - margin.delta;
}

double sphere_set_clearance(const SphereSet& a, const SphereSet& b,
                            SafetyMargin margin) {
  if (a.spheres.empty() || b.spheres.empty()) {
    throw Error(ErrorCode::kEmptyInput, "sphere sets must be nonempty");
  }
  simd::PointsSoa ca, cb;
  std::vector<double> ra, rb;
  for (const Sphere& s : a.spheres) {
    ca.push_back(s.center);
    ra.push_back(s.radius);
  }
  for (const Sphere& s : b.spheres) {
    cb.push_back(s.center);
    rb.push_back(s.radius);
  }
  return simd::MinPairClearance(ca.view(), ra.data(), cb.view(), rb.data()) -
         margin.delta;
}

std::uint64_t constraint_count(std::uint64_t n_rob, std::uint64_t n_env,
                               std::uint64_t n_checkpoints) {
  std::uint64_t pairs = 0;
  std::uint64_t total = 0;
  if (__builtin_mul_overflow(n_rob, n_env, &pairs) ||
      __builtin_mul_overflow(pairs, n_checkpoints, &total)) {
    throw Error(ErrorCode::kInvalidArgument, "constraint count overflows");
  }
  return total;
}

double epa_penetration_depth(const ConvexPolytope&, const ConvexPolytope&) {
  throw Error(ErrorCode::kNotImplemented,
              "penetration depth (EPA) is not provided; GJK reports contact "
              "as distance 0");
}

}  // namespace obbscene
