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
#include "gleak/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "gleak/errors.h"

namespace gleak {
namespace {

double NearestInteger(double v) {
  // Adding 0.0 turns -0.0 into +0.0 so rounded output prints cleanly.
  return std::nearbyint(v) + 0.0;
}

}  // namespace

LinearSolution solve_linear_system(const Matrix& a, const Vector& b,
                                   double tol) {
  const std::size_t n = a.rows();
  const std::size_t p = a.cols();
  if (n < p) {
    throw Error(ErrorCode::kDimensionMismatch,
                "solve_linear needs rows >= cols, got " + a.shape());
  }
  if (b.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "solve_linear: " + a.shape() + " with rhs length " +
                    std::to_string(b.size()));
  }

  const double scale = max_abs(a);
  Matrix work = a;
  Vector rhs = b;
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t pivot_row = c;
    double pivot_mag = std::abs(work(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double mag = std::abs(work(r, c));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (scale == 0.0 || pivot_mag < tol * scale) {
      throw RankDeficientError(rank(a, tol), p, "solve_linear");
    }
    if (pivot_row != c) {
      for (std::size_t k = 0; k < p; ++k) {
        std::swap(work(c, k), work(pivot_row, k));
      }
      std::swap(rhs[c], rhs[pivot_row]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double factor = work(r, c) / work(c, c);
      if (factor == 0.0) continue;
      work(r, c) = 0.0;
      for (std::size_t k = c + 1; k < p; ++k) work(r, k) -= factor * work(c, k);
      rhs[r] -= factor * rhs[c];
    }
  }

  Vector x(p);
  for (std::size_t i = p; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < p; ++k) s -= work(i, k) * x[k];
    x[i] = s / work(i, i);
  }

  const Vector fitted = matvec(a, x);
  return LinearSolution{x, max_abs_diff(fitted, b)};
}

Vector solve_linear(const Matrix& a, const Vector& b, double tol) {
  return solve_linear_system(a, b, tol).x;
}

std::size_t rank(const Matrix& m, double tol) {
  const double scale = max_abs(m);
  if (scale == 0.0) return 0;
  Matrix work = m;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> col_perm(cols);
  for (std::size_t c = 0; c < cols; ++c) col_perm[c] = c;

  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    std::size_t best_row = r;
    std::size_t best_col = r;
    double best = 0.0;
    for (std::size_t i = r; i < rows; ++i) {
      for (std::size_t j = r; j < cols; ++j) {
        const double mag = std::abs(work(i, col_perm[j]));
        if (mag > best) {
          best = mag;
          best_row = i;
          best_col = j;
        }
      }
    }
    if (best < tol * scale) break;
    std::swap(col_perm[r], col_perm[best_col]);
    if (best_row != r) {
      for (std::size_t j = 0; j < cols; ++j) {
        std::swap(work(r, j), work(best_row, j));
      }
    }
    const double pivot = work(r, col_perm[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const double factor = work(i, col_perm[r]) / pivot;
      if (factor == 0.0) continue;
      for (std::size_t j = r; j < cols; ++j) {
        work(i, col_perm[j]) -= factor * work(r, col_perm[j]);
      }
    }
  }
  return r;
}

Matrix round_integral(const Matrix& m, double tol) {
  Matrix out = m;
  double worst = -1.0;
  std::size_t worst_r = 0;
  std::size_t worst_c = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const double rounded = NearestInteger(m(r, c));
      const double dist = std::abs(m(r, c) - rounded);
      if (!(dist <= worst) || std::isnan(dist)) {
        worst = std::isnan(dist) ? std::numeric_limits<double>::infinity()
                                 : dist;
        worst_r = r;
        worst_c = c;
      }
      out(r, c) = rounded;
    }
  }
  if (!(worst <= tol)) {
    throw NotIntegralError(worst_r, worst_c, m(worst_r, worst_c), worst);
  }
  return out;
}

Vector round_integral(const Vector& v, double tol) {
  const Matrix rounded = round_integral(Matrix(v.size(), 1, v.values()), tol);
  return rounded.column(0);
}

double integrality_residual(const Matrix& m) {
  double worst = 0.0;
  for (double v : m.entries()) {
    worst = std::max(worst, std::abs(v - NearestInteger(v)));
  }
  return worst;
}

double integrality_residual(const Vector& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - NearestInteger(x)));
  return worst;
}

double min_symmetric_pivot(const Matrix& a, double tol) {
  if (!a.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "min_symmetric_pivot needs a square matrix, got " + a.shape());
  }
  Matrix work = a;
  const std::size_t n = a.rows();
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = work(k, k);
    if (std::abs(pivot) <= tol) {
      // A PSD matrix with a zero diagonal entry has a zero row there.
      double off = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) {
        off = std::max(off, std::abs(work(k, j)));
      }
      if (off > tol) return -off;
      smallest = std::min(smallest, pivot);
      continue;
    }
    smallest = std::min(smallest, pivot);
    if (pivot < 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = work(i, k) / pivot;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) work(i, j) -= factor * work(k, j);
    }
  }
  return smallest;
}

}  // namespace gleak
