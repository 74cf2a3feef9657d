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
// Exact enumeration of binary matrices with a prescribed Gram matrix.
//
// The search assigns whole columns rather than single cells. Rows are kept in
// lexicographic order with respect to the columns assigned so far, so rows
// that agree on every assigned column form a contiguous "class" and are
// interchangeable. Assigning a new column therefore only decides how many
// ones each class receives (placed at the class's tail), and the column's
// pair counts against every assigned column become linear constraints on
// those per-class counts. Each multiset of rows is reached exactly once,
// which makes enumeration of canonical forms duplicate-free.
//
// Column choice is fail-first: every unassigned column's feasible count
// vectors are counted (capped), an empty column prunes the node, and the
// column with the fewest options goes next. Ties prefer the tightest column
// sum slack min(alpha_jj, m - alpha_jj), then the lowest index.

#include <algorithm>
#include <chrono>
#include <limits>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gleak/errors.h"
#include "gleak/reconstruct.h"

namespace gleak {
namespace {

using Bits = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxSamples = 64;
constexpr std::size_t kLookaheadCap = 16;

struct RowClass {
  std::size_t begin;
  std::size_t end;
  std::size_t size() const { return end - begin; }
};

class GramSearch {
 public:
  GramSearch(const IlpModel& model, const SolveOptions& options)
      : model_(model),
        options_(options),
        m_(model.samples()),
        d_(model.features()),
        columns_(d_, 0),
        assigned_(d_, false) {
    if (m_ > kMaxSamples) {
      throw Error(ErrorCode::kInvalidArgument,
                  "solver supports at most " + std::to_string(kMaxSamples) +
                      " samples");
    }
    classes_.push_back({0, m_});
  }

  SolveResult Run() {
    start_ = Clock::now();
    Search();

    SolveResult result;
    for (const auto& key : found_) {
      std::vector<double> entries(key.begin(), key.end());
      result.solutions.push_back({Matrix(m_, d_, std::move(entries)), {}});
    }
    SolverStats& stats = result.stats;
    stats.nodes_explored = nodes_;
    stats.solutions_found = found_.size();
    stats.wall_time =
        std::chrono::duration<double>(Clock::now() - start_).count();
    stats.exhausted = !stopped_ && !deadline_hit_;
    stats.constraints_ordered = count_constraints(m_, d_);
    stats.constraints_unordered = count_constraints_unordered(m_, d_);
    if (deadline_hit_) {
      stats.status = SolveStatus::kLimitReached;
    } else if (found_.empty()) {
      stats.status = SolveStatus::kInfeasible;
    } else {
      stats.status = found_.size() == 1 ? SolveStatus::kUnique
                                        : SolveStatus::kMultiple;
    }
    return result;
  }

 private:
  // Per-class counts for column j consistent with its column sum and its pair
  // counts against every assigned column. Enumerates from the largest count
  // down; stops once cap vectors were seen (cap 0 = all).
  std::vector<std::vector<std::size_t>> FeasibleCounts(std::size_t j,
                                                       std::size_t cap) const {
    const std::size_t num_classes = classes_.size();
    std::vector<std::int64_t> need;
    std::vector<Bits> mask;
    need.push_back(model_.target(j, j));
    mask.push_back(num_classes == 64 ? ~Bits{0}
                                     : (Bits{1} << num_classes) - 1);
    for (std::size_t a : order_) {
      Bits classes_with_one = 0;
      for (std::size_t c = 0; c < num_classes; ++c) {
        if ((columns_[a] >> classes_[c].begin) & 1) {
          classes_with_one |= Bits{1} << c;
        }
      }
      need.push_back(model_.target(j, a));
      mask.push_back(classes_with_one);
    }
    const std::size_t q_count = need.size();

    // suffix[q * (C + 1) + c]: rows available to constraint q in classes >= c.
    std::vector<std::int64_t> suffix(q_count * (num_classes + 1), 0);
    for (std::size_t q = 0; q < q_count; ++q) {
      for (std::size_t c = num_classes; c-- > 0;) {
        suffix[q * (num_classes + 1) + c] =
            suffix[q * (num_classes + 1) + c + 1] +
            (((mask[q] >> c) & 1) ? static_cast<std::int64_t>(classes_[c].size())
                                  : 0);
      }
    }

    std::vector<std::vector<std::size_t>> out;
    for (std::size_t q = 0; q < q_count; ++q) {
      if (need[q] < 0 || need[q] > suffix[q * (num_classes + 1)]) return out;
    }

    std::vector<std::size_t> counts(num_classes, 0);
    auto recurse = [&](auto&& self, std::size_t c) -> void {
      if (cap != 0 && out.size() >= cap) return;
      if (c == num_classes) {
        out.push_back(counts);
        return;
      }
      std::int64_t lo = 0;
      std::int64_t hi = static_cast<std::int64_t>(classes_[c].size());
      for (std::size_t q = 0; q < q_count; ++q) {
        const std::int64_t rest = suffix[q * (num_classes + 1) + c + 1];
        if ((mask[q] >> c) & 1) {
          hi = std::min(hi, need[q]);
          lo = std::max(lo, need[q] - rest);
        } else if (need[q] > rest) {
          return;
        }
      }
      for (std::int64_t t = hi; t >= lo; --t) {
        counts[c] = static_cast<std::size_t>(t);
        for (std::size_t q = 0; q < q_count; ++q) {
          if ((mask[q] >> c) & 1) need[q] -= t;
        }
        self(self, c + 1);
        for (std::size_t q = 0; q < q_count; ++q) {
          if ((mask[q] >> c) & 1) need[q] += t;
        }
        if (cap != 0 && out.size() >= cap) return;
      }
    };
    recurse(recurse, 0);
    return out;
  }

  bool OutOfTime() {
    if (options_.deadline_seconds == std::numeric_limits<double>::infinity()) {
      return false;
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start_).count();
    if (elapsed > options_.deadline_seconds) deadline_hit_ = true;
    return deadline_hit_;
  }

  void Search() {
    if (stopped_ || deadline_hit_ || OutOfTime()) return;
    ++nodes_;
    if (order_.size() == d_) {
      Emit();
      return;
    }

    std::size_t best = d_;
    std::size_t best_options = 0;
    std::int64_t best_slack = 0;
    for (std::size_t j = 0; j < d_; ++j) {
      if (assigned_[j]) continue;
      const std::size_t options = FeasibleCounts(j, kLookaheadCap).size();
      if (options == 0) return;
      const std::int64_t sum = model_.target(j, j);
      const std::int64_t slack =
          std::min(sum, static_cast<std::int64_t>(m_) - sum);
      if (best == d_ || options < best_options ||
          (options == best_options && slack < best_slack)) {
        best = j;
        best_options = options;
        best_slack = slack;
      }
    }

    for (const auto& counts : FeasibleCounts(best, 0)) {
      const std::vector<RowClass> saved = classes_;
      Assign(best, counts);
      Search();
      classes_ = saved;
      columns_[best] = 0;
      assigned_[best] = false;
      order_.pop_back();
      if (stopped_ || deadline_hit_) return;
    }
  }

  void Assign(std::size_t j, const std::vector<std::size_t>& counts) {
    Bits bits = 0;
    std::vector<RowClass> next;
    next.reserve(classes_.size() * 2);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const RowClass cls = classes_[c];
      const std::size_t split = cls.end - counts[c];
      for (std::size_t k = split; k < cls.end; ++k) bits |= Bits{1} << k;
      if (split > cls.begin) next.push_back({cls.begin, split});
      if (cls.end > split) next.push_back({split, cls.end});
    }
    columns_[j] = bits;
    assigned_[j] = true;
    order_.push_back(j);
    classes_ = std::move(next);
  }

  void Emit() {
    std::vector<std::vector<std::uint8_t>> rows(m_,
                                                std::vector<std::uint8_t>(d_));
    for (std::size_t k = 0; k < m_; ++k) {
      for (std::size_t j = 0; j < d_; ++j) {
        rows[k][j] = static_cast<std::uint8_t>((columns_[j] >> k) & 1);
      }
    }
    std::sort(rows.begin(), rows.end());
    std::vector<std::uint8_t> key;
    key.reserve(m_ * d_);
    for (const auto& row : rows) key.insert(key.end(), row.begin(), row.end());
    found_.insert(std::move(key));
    if (options_.limit != SolveOptions::kUnlimited &&
        found_.size() >= options_.limit) {
      stopped_ = true;
    }
  }

  const IlpModel& model_;
  const SolveOptions& options_;
  const std::size_t m_;
  const std::size_t d_;

  std::vector<Bits> columns_;
  std::vector<bool> assigned_;
  std::vector<std::size_t> order_;
  std::vector<RowClass> classes_;

  std::set<std::vector<std::uint8_t>> found_;
  std::size_t nodes_ = 0;
  bool stopped_ = false;
  bool deadline_hit_ = false;
  Clock::time_point start_;
};

}  // namespace

SolveResult solve(const IlpModel& model, const SolveOptions& options) {
  return GramSearch(model, options).Run();
}

Discovery discover_batch_size(const Matrix& alpha, std::size_t max_m,
                              const SolveOptions& options) {
  if (!alpha.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "alpha must be square, got " + alpha.shape());
  }
  double largest = 1.0;
  for (std::size_t i = 0; i < alpha.rows(); ++i) {
    largest = std::max(largest, alpha(i, i));
  }
  bool any_deadline = false;
  for (auto m = static_cast<std::size_t>(largest); m <= max_m; ++m) {
    SolveResult result = solve(build_model(alpha, m), options);
    if (!result.solutions.empty()) return Discovery{m, std::move(result)};
    any_deadline |= result.stats.status == SolveStatus::kLimitReached;
  }
  throw Error(any_deadline ? ErrorCode::kDeadlineExceeded
                           : ErrorCode::kInfeasible,
              "no batch size up to " + std::to_string(max_m) +
                  " reproduces alpha");
}

}  // namespace gleak
