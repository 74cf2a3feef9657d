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
#ifndef GLEAK_RECONSTRUCT_H_
#define GLEAK_RECONSTRUCT_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gleak/attack.h"
#include "gleak/matrix.h"

namespace gleak {

// How the pair-product variables delta_{ijk} are laid out. kOrdered creates
// one per ordered pair (i, j), i != j, which yields (2m+1)d^2 - 2md
// constraints; kUnordered creates one per i < j.
enum class PairAccounting { kOrdered, kUnordered };

enum class Relation { kEqual, kLessEqual, kGreaterEqual };

struct LinearTerm {
  std::size_t var;
  int coeff;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation;
  std::int64_t rhs;
};

struct Variable {
  enum class Kind { kFeature, kProduct };
  Kind kind;
  std::size_t sample;  // k
  std::size_t first;   // i
  std::size_t second;  // j (== i for features)
  std::string name;
};

// The 0/1 linearization of alpha_ij = sum_k x_ki x_kj:
//   sum_k x_ki = alpha_ii
//   sum_k delta_ijk = alpha_ij                (i != j)
//   x_ki + x_kj >= 2 delta_ijk
//   x_ki + x_kj - 1 <= delta_ijk
class IlpModel {
 public:
  std::size_t samples() const noexcept { return m_; }
  std::size_t features() const noexcept { return d_; }
  PairAccounting accounting() const noexcept { return accounting_; }

  // Integer targets, row-major d x d.
  std::int64_t target(std::size_t i, std::size_t j) const {
    return alpha_[i * d_ + j];
  }

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<Constraint>& constraints() const noexcept {
    return constraints_;
  }

  std::size_t feature_var(std::size_t k, std::size_t i) const {
    return k * d_ + i;
  }

  // x_ki followed by the implied delta_ijk = x_ki x_kj.
  std::vector<int> assignment_for(const Matrix& x) const;

  // True when every constraint holds for a full 0/1 assignment.
  bool satisfied_by(const std::vector<int>& assignment) const;

 private:
  friend IlpModel build_model(const Matrix& alpha, std::size_t m,
                              PairAccounting accounting);

  std::size_t m_ = 0;
  std::size_t d_ = 0;
  PairAccounting accounting_ = PairAccounting::kOrdered;
  std::vector<std::int64_t> alpha_;
  std::vector<Variable> vars_;
  std::vector<Constraint> constraints_;
};

// Throws kInfeasibleScreen when alpha cannot be the Gram matrix of any m x d
// binary matrix by the cheap screens: symmetry, integrality, PSD,
// 0 <= alpha_ii <= m and 0 <= alpha_ij <= min(alpha_ii, alpha_jj).
IlpModel build_model(const Matrix& alpha, std::size_t m,
                     PairAccounting accounting = PairAccounting::kOrdered);

// (2m+1)d^2 - 2md.
std::size_t count_constraints(std::size_t m, std::size_t d);
// d + d(d-1)/2 + m d(d-1).
std::size_t count_constraints_unordered(std::size_t m, std::size_t d);

// CPLEX-LP style listing, one constraint per line.
std::string export_lp(const IlpModel& model);

// Rows sorted lexicographically (0 < 1, first column most significant).
Matrix canonical_form(const Matrix& x);

struct Solution {
  Matrix x;
  std::optional<Vector> y;
};

enum class SolveStatus { kUnique, kMultiple, kInfeasible, kLimitReached };

std::string_view SolveStatusName(SolveStatus status);

struct SolverStats {
  std::size_t nodes_explored = 0;
  std::size_t solutions_found = 0;
  double wall_time = 0.0;
  SolveStatus status = SolveStatus::kInfeasible;
  // True when the search tree was fully explored, i.e. the solution set is
  // complete and "unique" is a proof rather than a first hit.
  bool exhausted = false;
  std::size_t constraints_ordered = 0;
  std::size_t constraints_unordered = 0;
};

struct SolveOptions {
  static constexpr std::size_t kUnlimited = 0;
  // Stop after this many distinct canonical solutions; 0 enumerates all.
  std::size_t limit = 1;
  double deadline_seconds = std::numeric_limits<double>::infinity();
};

struct SolveResult {
  // Canonical forms, sorted, no duplicates.
  std::vector<Solution> solutions;
  SolverStats stats;
};

// Exact 0/1 search for every m x d binary X with X^T X = alpha, up to row
// order. See solver.cc for the search scheme. Status kLimitReached means the
// deadline fired; solutions found before that are kept.
SolveResult solve(const IlpModel& model, const SolveOptions& options = {});

struct Discovery {
  std::size_t batch_size;
  SolveResult result;
};

// Tries m = max(1, max_i alpha_ii), ... , max_m and returns the first batch
// size with a solution. Throws kInfeasible if none up to max_m.
Discovery discover_batch_size(const Matrix& alpha, std::size_t max_m,
                              const SolveOptions& options = {});

// One y in {-1,+1}^m with X^T y = beta. Throws kNoConsistentLabels.
Vector recover_labels(const Matrix& x, const Vector& beta);

// Every such y, in lexicographic order of (+1 before -1); limit 0 = all.
std::vector<Vector> enumerate_labels(const Matrix& x, const Vector& beta,
                                     std::size_t limit = 0);

struct Verification {
  bool ok = true;
  std::string violation;
};

// Exact integer checks X^T X == alpha and, when y is present, X^T y == beta.
Verification verify_solution(const Matrix& x, const std::optional<Vector>& y,
                             const RecoveredSystem& system);

}  // namespace gleak

#endif  // GLEAK_RECONSTRUCT_H_
