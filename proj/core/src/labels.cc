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
#include <string>
#include <vector>

#include "gleak/errors.h"
#include "gleak/linalg.h"
#include "gleak/reconstruct.h"

namespace gleak {
namespace {

struct LabelProblem {
  std::size_t m;
  std::size_t d;
  std::vector<std::uint8_t> x;         // m x d row-major
  std::vector<std::int64_t> beta;      // length d
  std::vector<std::int64_t> ones_from; // (m + 1) x d suffix column counts
};

LabelProblem MakeProblem(const Matrix& x, const Vector& beta) {
  if (x.cols() != beta.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "labels for " + x.shape() + " with beta of length " +
                    std::to_string(beta.size()));
  }
  LabelProblem p{x.rows(), x.cols(), {}, {}, {}};
  p.x.resize(p.m * p.d);
  for (std::size_t k = 0; k < p.m; ++k) {
    for (std::size_t i = 0; i < p.d; ++i) {
      const double v = x(k, i);
      if (v != 0.0 && v != 1.0) {
        throw Error(ErrorCode::kInvalidArgument, "x is not binary");
      }
      p.x[k * p.d + i] = static_cast<std::uint8_t>(v);
    }
  }
  if (integrality_residual(beta) != 0.0) {
    throw Error(ErrorCode::kNoConsistentLabels, "beta is not integral");
  }
  for (double b : beta) p.beta.push_back(static_cast<std::int64_t>(b));
  p.ones_from.assign((p.m + 1) * p.d, 0);
  for (std::size_t k = p.m; k-- > 0;) {
    for (std::size_t i = 0; i < p.d; ++i) {
      p.ones_from[k * p.d + i] = p.ones_from[(k + 1) * p.d + i] + p.x[k * p.d + i];
    }
  }
  return p;
}

// Depth-first sign search. The residual beta - sum_{assigned} y_k x_k must be
// reachable by the remaining rows: |r_i| <= ones left in column i, with the
// same parity.
void SearchSigns(const LabelProblem& p, std::size_t k,
                 std::vector<std::int64_t>& residual, std::vector<double>& y,
                 std::vector<Vector>& out, std::size_t limit) {
  for (std::size_t i = 0; i < p.d; ++i) {
    const std::int64_t left = p.ones_from[k * p.d + i];
    const std::int64_t r = residual[i];
    if (r > left || -r > left || ((left - r) % 2) != 0) return;
  }
  if (k == p.m) {
    out.emplace_back(y);
    return;
  }
  for (const double sign : {1.0, -1.0}) {
    y[k] = sign;
    const auto s = static_cast<std::int64_t>(sign);
    for (std::size_t i = 0; i < p.d; ++i) residual[i] -= s * p.x[k * p.d + i];
    SearchSigns(p, k + 1, residual, y, out, limit);
    for (std::size_t i = 0; i < p.d; ++i) residual[i] += s * p.x[k * p.d + i];
    if (limit != 0 && out.size() >= limit) return;
  }
}

bool Consistent(const LabelProblem& p, const Vector& y) {
  for (std::size_t i = 0; i < p.d; ++i) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < p.m; ++k) {
      s += static_cast<std::int64_t>(y[k]) * p.x[k * p.d + i];
    }
    if (s != p.beta[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<Vector> enumerate_labels(const Matrix& x, const Vector& beta,
                                     std::size_t limit) {
  const LabelProblem p = MakeProblem(x, beta);
  std::vector<std::int64_t> residual = p.beta;
  std::vector<double> y(p.m, 1.0);
  std::vector<Vector> out;
  SearchSigns(p, 0, residual, y, out, limit);
  return out;
}

Vector recover_labels(const Matrix& x, const Vector& beta) {
  const LabelProblem p = MakeProblem(x, beta);

  // With linearly independent samples X^T y = beta has one real solution.
  if (p.d >= p.m && rank(x) == p.m) {
    try {
      Vector y = solve_linear(transpose(x), beta);
      bool signs = true;
      for (double& v : y) {
        const double rounded = v > 0.0 ? 1.0 : -1.0;
        if (std::abs(v - rounded) > 1e-6) signs = false;
        v = rounded;
      }
      if (signs && Consistent(p, y)) return y;
    } catch (const RankDeficientError&) {
      // Fall through to the sign search.
    }
  }

  std::vector<std::int64_t> residual = p.beta;
  std::vector<double> y(p.m, 1.0);
  std::vector<Vector> out;
  SearchSigns(p, 0, residual, y, out, 1);
  if (out.empty()) {
    throw Error(ErrorCode::kNoConsistentLabels,
                "no +-1 labelling of the " + x.shape() +
                    " batch reproduces beta");
  }
  return out.front();
}

}  // namespace gleak
