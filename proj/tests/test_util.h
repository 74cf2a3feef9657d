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
#ifndef GLEAK_TESTS_TEST_UTIL_H_
#define GLEAK_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <vector>

#include "gleak/fedsim.h"
#include "gleak/matrix.h"

namespace gleak::testing {

inline Vector RandomVector(std::size_t n, Rng& rng, double lo = -1.0,
                           double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

inline Matrix RandomMatrix(std::size_t r, std::size_t c, Rng& rng,
                           double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  }
  return m;
}

inline Matrix RandomSymmetric(std::size_t d, Rng& rng) {
  Matrix a = RandomMatrix(d, d, rng);
  return 0.5 * (a + transpose(a));
}

// X^T X with integer arithmetic, independent of matmul.
inline std::vector<std::int64_t> IntegerGram(const Matrix& x) {
  const std::size_t d = x.cols();
  std::vector<std::int64_t> g(d * d, 0);
  for (std::size_t k = 0; k < x.rows(); ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        g[i * d + j] += static_cast<std::int64_t>(x(k, i)) *
                        static_cast<std::int64_t>(x(k, j));
      }
    }
  }
  return g;
}

inline Matrix IntegerGramMatrix(const Matrix& x) {
  const auto g = IntegerGram(x);
  std::vector<double> entries(g.begin(), g.end());
  return Matrix(x.cols(), x.cols(), std::move(entries));
}

}  // namespace gleak::testing

#endif  // GLEAK_TESTS_TEST_UTIL_H_
