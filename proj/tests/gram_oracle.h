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
#ifndef GLEAK_TESTS_GRAM_ORACLE_H_
#define GLEAK_TESTS_GRAM_ORACLE_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "gleak/matrix.h"
#include "test_util.h"

namespace gleak::testing {

using RowMajorBits = std::vector<std::uint8_t>;

// Brute force: every m x d binary matrix, grouped by its integer Gram
// matrix. Values are the row-sorted (canonical) matrices in each group.
inline std::map<std::vector<std::int64_t>, std::set<RowMajorBits>>
EnumerateGramClasses(std::size_t m, std::size_t d) {
  std::map<std::vector<std::int64_t>, std::set<RowMajorBits>> classes;
  const std::size_t cells = m * d;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
    Matrix x(m, d);
    for (std::size_t c = 0; c < cells; ++c) {
      x(c / d, c % d) = static_cast<double>((code >> c) & 1);
    }
    std::vector<RowMajorBits> rows(m, RowMajorBits(d));
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < d; ++i) {
        rows[k][i] = static_cast<std::uint8_t>(x(k, i));
      }
    }
    std::sort(rows.begin(), rows.end());
    RowMajorBits canonical;
    for (const auto& r : rows) canonical.insert(canonical.end(), r.begin(), r.end());
    classes[IntegerGram(x)].insert(std::move(canonical));
  }
  return classes;
}

inline RowMajorBits Bits(const Matrix& x) {
  RowMajorBits out;
  for (double v : x.entries()) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

inline Matrix GramFromKey(const std::vector<std::int64_t>& key,
                          std::size_t d) {
  std::vector<double> entries(key.begin(), key.end());
  return Matrix(d, d, std::move(entries));
}

}  // namespace gleak::testing

#endif  // GLEAK_TESTS_GRAM_ORACLE_H_
