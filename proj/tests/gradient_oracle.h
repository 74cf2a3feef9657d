// Copyright 2026 The gleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef GLEAK_TESTS_GRADIENT_ORACLE_H_
#define GLEAK_TESTS_GRADIENT_ORACLE_H_

#include <vector>

#include "gleak/fedsim.h"
#include "gleak/matrix.h"

namespace gleak::testing {

inline Vector Row(const Matrix& x, std::size_t r) {
  return Vector(std::vector<double>(x.row(r).begin(), x.row(r).end()));
}

// Sum of per-sample gradients -y x / 2 + (theta.x) x / 4, written as a loop.
inline Vector LoopGradient(const Batch& b, const Vector& theta) {
  Vector g(theta.size());
  for (std::size_t k = 0; k < b.samples(); ++k) {
    const Vector x = Row(b.x(), k);
    const double z = dot(theta, x);
    g = g + (-0.5 * b.y()[k] + 0.25 * z) * x;
  }
  return g;
}

inline Vector CentralDifferenceGradient(const Batch& b, const Vector& theta,
                                        double h) {
  Vector g(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    Vector plus = theta;
    Vector minus = theta;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (total_loss(b, plus) - total_loss(b, minus)) / (2.0 * h);
  }
  return g;
}

}  // namespace gleak::testing

#endif  // GLEAK_TESTS_GRADIENT_ORACLE_H_
