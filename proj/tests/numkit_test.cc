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
#include <cmath>
#include <cstdint>

#include <gtest/gtest.h>

#include "gleak/errors.h"
#include "gleak/linalg.h"
#include "gleak/matrix.h"
#include "test_util.h"

namespace gleak {
namespace {

using ::gleak::testing::IntegerGram;
using ::gleak::testing::RandomMatrix;
using ::gleak::testing::RandomVector;

TEST(MatrixTest, RejectsEmptyShapes) {
  EXPECT_THROW(Matrix(0, 3), Error);
  EXPECT_THROW(Vector(std::size_t{0}), Error);
  EXPECT_THROW(Matrix(2, 2, std::vector<double>{1, 2, 3}), Error);
}

TEST(MatmulTest, IdentityLeavesMatrixUnchanged) {
  const Matrix a{{1.5, -2.0}, {3.0, 4.25}};
  EXPECT_EQ(matmul(Matrix::Identity(2), a), a);
}

TEST(MatmulTest, HandEvaluatedProduct) {
  const Matrix a{{1, 1}, {0, 1}};
  const Matrix b{{1}, {1}};
  EXPECT_EQ(matmul(a, b), (Matrix{{2}, {1}}));
}

TEST(MatmulTest, DimensionMismatchNamesBothShapes) {
  try {
    matmul(Matrix(2, 3), Matrix(2, 3));
    FAIL() << "expected a dimension error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    EXPECT_NE(std::string(e.what()).find("2x3 x 2x3"), std::string::npos);
  }
}

TEST(MatmulTest, TransposeOfProductReversesOrder) {
  Rng rng(7);
  const Matrix a = RandomMatrix(3, 3, rng);
  const Matrix b = RandomMatrix(3, 3, rng);
  EXPECT_LE(max_abs_diff(transpose(matmul(a, b)),
                         matmul(transpose(b), transpose(a))),
            1e-15);
}

TEST(MatmulTest, AssociativeWithinRelativeTolerance) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = RandomMatrix(4, 5, rng, -1e3, 1e3);
    const Matrix b = RandomMatrix(5, 3, rng, -1e3, 1e3);
    const Matrix c = RandomMatrix(3, 6, rng, -1e3, 1e3);
    const Matrix left = matmul(matmul(a, b), c);
    const Matrix right = matmul(a, matmul(b, c));
    EXPECT_LE(max_abs_diff(left, right), 1e-9 * max_abs(left));
  }
}

TEST(SolveLinearTest, IdentitySystem) {
  EXPECT_EQ(solve_linear(Matrix::Identity(3), Vector{1, 2, 3}),
            (Vector{1, 2, 3}));
}

TEST(SolveLinearTest, ConsistentOverdeterminedSystem) {
  const Matrix a{{1, 0}, {1, 1}, {0, 1}};
  const LinearSolution sol = solve_linear_system(a, Vector{1, 3, 2});
  EXPECT_NEAR(sol.x[0], 1.0, 1e-15);
  EXPECT_NEAR(sol.x[1], 2.0, 1e-15);
  EXPECT_LE(sol.max_residual, 1e-15);
}

TEST(SolveLinearTest, DuplicateRowsAreRankDeficient) {
  const Matrix a{{1, 2}, {1, 2}};
  try {
    solve_linear(a, Vector{1, 5});
    FAIL() << "expected RankDeficient";
  } catch (const RankDeficientError& e) {
    EXPECT_EQ(e.numeric_rank(), 1u);
    EXPECT_EQ(e.required_rank(), 2u);
  }
}

TEST(SolveLinearTest, ContradictoryOverdeterminedShowsResidual) {
  const Matrix a{{1, 0}, {0, 1}, {1, 0}};
  const LinearSolution sol = solve_linear_system(a, Vector{1, 1, 3});
  EXPECT_GT(sol.max_residual, 1.0);
}

TEST(SolveLinearTest, RecoversPlantedSolutionOnWellConditionedSystems) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 12;
    // Diagonally dominant keeps the condition number small.
    Matrix a = RandomMatrix(n, n, rng);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
    const Vector x = RandomVector(n, rng, -10, 10);
    const Vector back = solve_linear(a, matvec(a, x));
    EXPECT_LE(max_abs_diff(back, x), 1e-9);
  }
}

TEST(SolveLinearTest, RejectsWideSystems) {
  EXPECT_THROW(solve_linear(Matrix(2, 3, 1.0), Vector{1, 2}), Error);
}

TEST(RoundIntegralTest, WithinTolerance) {
  EXPECT_EQ(round_integral(Matrix{{2.0000001}}, 1e-6), (Matrix{{2}}));
}

TEST(RoundIntegralTest, ReportsWorstOffender) {
  try {
    round_integral(Matrix{{1.0, 0.4}, {2.1, 3.0}}, 1e-6);
    FAIL() << "expected NotIntegral";
  } catch (const NotIntegralError& e) {
    EXPECT_EQ(e.row(), 0u);
    EXPECT_EQ(e.col(), 1u);
    EXPECT_NEAR(e.distance(), 0.4, 1e-12);
  }
}

TEST(RoundIntegralTest, NegativeZeroBecomesZero) {
  const Matrix r = round_integral(Matrix{{-1e-9}}, 1e-6);
  EXPECT_FALSE(std::signbit(r(0, 0)));
}

TEST(RoundIntegralTest, FloatingGramOfBinaryMatrixRoundsToIntegerGram) {
  Rng rng(5);
  std::bernoulli_distribution bit(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 12;
    const std::size_t d = 1 + trial % 20;
    Matrix x(m, d);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < d; ++i) x(k, i) = bit(rng) ? 1.0 : 0.0;
    }
    const Matrix rounded = round_integral(matmul(transpose(x), x), 1e-9);
    const auto exact = IntegerGram(x);
    for (std::size_t e = 0; e < exact.size(); ++e) {
      EXPECT_EQ(rounded.entries()[e], static_cast<double>(exact[e]));
    }
  }
}

TEST(RankTest, Identity) { EXPECT_EQ(rank(Matrix::Identity(4)), 4u); }

TEST(RankTest, OuterProductHasRankOne) {
  const Vector u{1, -2, 3.5, 0.25};
  EXPECT_EQ(rank(outer(u, u)), 1u);
}

TEST(RankTest, ZeroMatrix) { EXPECT_EQ(rank(Matrix(3, 3)), 0u); }

TEST(RankTest, TallMatrixFromIndependentColumns) {
  // Columns e1 + e4, e2 + e5, e3: independent by construction.
  Matrix a(5, 3);
  a(0, 0) = a(3, 0) = 1;
  a(1, 1) = a(4, 1) = 1;
  a(2, 2) = 1;
  a(3, 2) = 0.5;
  EXPECT_EQ(rank(a), 3u);
}

TEST(RankTest, GramPreservesRankOfBinaryMatrices) {
  Rng rng(17);
  std::bernoulli_distribution bit(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + trial % 7;
    const std::size_t d = 1 + (trial / 7) % 7;
    Matrix x(m, d);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < d; ++i) x(k, i) = bit(rng) ? 1.0 : 0.0;
    }
    EXPECT_EQ(rank(matmul(transpose(x), x)), rank(x)) << "trial " << trial;
  }
}

TEST(SymmetricPivotTest, DetectsIndefiniteMatrices) {
  EXPECT_GE(min_symmetric_pivot(Matrix{{2, 1}, {1, 2}}), 0.0);
  EXPECT_LT(min_symmetric_pivot(Matrix{{1, 2}, {2, 1}}), -1e-9);
  // Zero diagonal with a nonzero row is never PSD.
  EXPECT_LT(min_symmetric_pivot(Matrix{{0, 1}, {1, 1}}), -1e-9);
  EXPECT_GE(min_symmetric_pivot(Matrix{{0, 0}, {0, 1}}), -1e-9);
}

}  // namespace
}  // namespace gleak
