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
#include <set>

#include <gtest/gtest.h>

#include "gleak/reconstruct.h"
#include "gram_oracle.h"

namespace gleak {
namespace {

using ::gleak::testing::Bits;
using ::gleak::testing::EnumerateGramClasses;
using ::gleak::testing::GramFromKey;
using ::gleak::testing::RowMajorBits;

class CompletenessTest
    : public ::testing::TestWithParam<std::pair<std::size_t, std::size_t>> {};

TEST_P(CompletenessTest, SolverEnumeratesExactlyTheOracleSet) {
  const auto [m, d] = GetParam();
  const auto classes = EnumerateGramClasses(m, d);
  std::size_t mismatches = 0;
  for (const auto& [key, expected] : classes) {
    const SolveResult r = solve(build_model(GramFromKey(key, d), m),
                                {.limit = SolveOptions::kUnlimited});
    std::set<RowMajorBits> got;
    for (const Solution& s : r.solutions) got.insert(Bits(s.x));
    EXPECT_EQ(got.size(), r.solutions.size()) << "duplicate solutions";
    EXPECT_TRUE(r.stats.exhausted);
    if (got != expected) ++mismatches;
  }
  EXPECT_EQ(mismatches, 0u) << "over " << classes.size() << " Gram matrices";
}

std::vector<std::pair<std::size_t, std::size_t>> AllSmallShapes() {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t d = 1; d <= 4; ++d) shapes.emplace_back(m, d);
  }
  return shapes;
}

INSTANTIATE_TEST_SUITE_P(
    UpToFourByFour, CompletenessTest, ::testing::ValuesIn(AllSmallShapes()),
    [](const auto& info) {
      return "m" + std::to_string(info.param.first) + "_d" +
             std::to_string(info.param.second);
    });

// The explicit linearized model accepts exactly the binary matrices whose
// Gram matrix is alpha.
TEST(ModelFidelityTest, FeasibleSetIsTheGramClass) {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t d = 1; d <= 3; ++d) {
      const auto classes = EnumerateGramClasses(m, d);
      for (const auto& [key, members] : classes) {
        for (PairAccounting acc :
             {PairAccounting::kOrdered, PairAccounting::kUnordered}) {
          const IlpModel model = build_model(GramFromKey(key, d), m, acc);
          for (std::uint64_t code = 0; code < (1u << (m * d)); ++code) {
            Matrix x(m, d);
            for (std::size_t c = 0; c < m * d; ++c) {
              x(c / d, c % d) = static_cast<double>((code >> c) & 1);
            }
            const bool in_class =
                ::gleak::testing::IntegerGram(x) == key;
            EXPECT_EQ(model.satisfied_by(model.assignment_for(x)), in_class);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace gleak
