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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gleak/errors.h"
#include "gleak/fedsim.h"
#include "gleak/reconstruct.h"

namespace gleak {
namespace {

TEST(RecoverLabelsTest, IdentityReadsLabelsDirectly) {
  EXPECT_EQ(recover_labels(Matrix::Identity(2), Vector{1, -1}),
            (Vector{1, -1}));
}

TEST(RecoverLabelsTest, DuplicateRowsAreAmbiguous) {
  const Matrix x{{1, 1}, {1, 1}};
  const std::vector<Vector> all = enumerate_labels(x, Vector{0, 0});
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0], (Vector{1, -1}));
  EXPECT_EQ(all[1], (Vector{-1, 1}));
  EXPECT_EQ(enumerate_labels(x, Vector{0, 0}, 1).size(), 1u);
}

TEST(RecoverLabelsTest, ZeroRowLabelIsFree) {
  const Matrix x{{1, 0}, {0, 0}};
  EXPECT_EQ(enumerate_labels(x, Vector{1, 0}).size(), 2u);
}

TEST(RecoverLabelsTest, RoundTripsRandomBatches) {
  Rng rng(300);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + trial % 8;
    const std::size_t d = 1 + trial % 12;
    const Batch b = random_batch(m, d, rng);
    const Vector beta = label_correlation(b);
    const Vector y = recover_labels(b.x(), beta);
    EXPECT_EQ(matvec(transpose(b.x()), y), beta);
    const std::vector<Vector> all = enumerate_labels(b.x(), beta);
    bool found = false;
    for (const Vector& v : all) found = found || v == b.y();
    EXPECT_TRUE(found);
  }
}

TEST(RecoverLabelsTest, InconsistentBetaThrows) {
  try {
    recover_labels(Matrix{{1, 0}, {1, 1}}, Vector{3, 0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoConsistentLabels);
  }
  // Parity: two rows cannot sum to an odd value.
  EXPECT_THROW(recover_labels(Matrix{{1}, {1}}, Vector{1}), Error);
  EXPECT_THROW(recover_labels(Matrix{{1}}, Vector{0.5}), Error);
  EXPECT_TRUE(enumerate_labels(Matrix{{1}, {1}}, Vector{1}).empty());
}

}  // namespace
}  // namespace gleak
