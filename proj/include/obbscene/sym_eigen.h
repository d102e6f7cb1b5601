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

#ifndef OBBSCENE_SYM_EIGEN_H_
#define OBBSCENE_SYM_EIGEN_H_

#include <array>

#include "obbscene/vec3.h"

namespace obbscene {

// Eigen-decomposition of a real symmetric 3x3 matrix.
//   values[0] <= values[1] <= values[2]
//   vectors[i] is the unit eigenvector for values[i]; the three vectors are
//   pairwise orthogonal and each has its largest-magnitude component positive
//   (ties prefer z, then y, then x).
struct EigenBasis {
  std::array<double, 3> values{};
  std::array<Vec3, 3> vectors{};
};

// Closed-form solve: the best separated eigenvalue from the trigonometric
// formula, its eigenvector from row cross products, the other two from a 2x2
// rotation in the complement plane. Falls back to cyclic Jacobi when all three
// eigenvalues agree within 1e-8 relative to the largest magnitude.
EigenBasis eigen_sym3(const SymMat3& m);

// Cyclic Jacobi solve, exposed for tests and as the clustered-spectrum path.
EigenBasis EigenSym3Jacobi(const SymMat3& m);

// Flips v so that its largest-magnitude component is positive; ties prefer
// z, then y, then x.
Vec3 CanonicalizeSign(const Vec3& v);

}  // namespace obbscene

#endif  // OBBSCENE_SYM_EIGEN_H_
