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
#ifndef GLEAK_LINALG_H_
#define GLEAK_LINALG_H_

#include <cstddef>

#include "gleak/matrix.h"

namespace gleak {

inline constexpr double kDefaultPivotTolerance = 1e-10;

struct LinearSolution {
  Vector x;
  // max_k |(a x - b)_k| over every equation, including those that were not
  // selected as pivot rows.
  double max_residual = 0.0;
};

// Gaussian elimination with partial (row) pivoting on a rows >= cols system.
// With more equations than unknowns the pivot rows are solved exactly and the
// remaining rows only contribute to max_residual, so a consistent system is
// recovered exactly and an inconsistent one shows up as a large residual.
//
// Throws RankDeficientError when a pivot is smaller than
// tol * (largest |entry| of a).
LinearSolution solve_linear_system(const Matrix& a, const Vector& b,
                                   double tol = kDefaultPivotTolerance);

// Convenience wrapper returning only x.
Vector solve_linear(const Matrix& a, const Vector& b,
                    double tol = kDefaultPivotTolerance);

// Numeric rank by complete-pivoting elimination; tol is relative to the
// largest |entry|.
std::size_t rank(const Matrix& m, double tol = kDefaultPivotTolerance);

// Nearest-integer rounding that fails with NotIntegralError unless every
// entry is within tol of an integer.
Matrix round_integral(const Matrix& m, double tol);
Vector round_integral(const Vector& v, double tol);

// Largest |entry - nearest integer|.
double integrality_residual(const Matrix& m);
double integrality_residual(const Vector& v);

// Symmetric elimination without pivoting on a symmetric matrix. Returns the
// smallest pivot encountered; a PSD matrix yields pivots >= -tol. Zero pivots
// (within tol) skip their row and column.
double min_symmetric_pivot(const Matrix& a, double tol = 1e-9);

}  // namespace gleak

#endif  // GLEAK_LINALG_H_
