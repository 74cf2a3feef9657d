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
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gleak/errors.h"
#include "gleak/linalg.h"
#include "gleak/reconstruct.h"

namespace gleak {
namespace {

std::string Index(std::size_t v) { return std::to_string(v + 1); }

void Screen(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInfeasibleScreen, what);
}

bool IsBinary(double v) { return v == 0.0 || v == 1.0; }

void AppendTerm(std::ostringstream& os, const LinearTerm& term,
                const std::string& name, bool first) {
  const int mag = std::abs(term.coeff);
  if (first) {
    if (term.coeff < 0) os << "- ";
  } else {
    os << (term.coeff < 0 ? " - " : " + ");
  }
  if (mag != 1) os << mag << ' ';
  os << name;
}

}  // namespace

IlpModel build_model(const Matrix& alpha, std::size_t m,
                     PairAccounting accounting) {
  if (!alpha.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "alpha must be square, got " + alpha.shape());
  }
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1");
  const std::size_t d = alpha.rows();

  Screen(integrality_residual(alpha) <= 1e-9, "alpha is not integral");
  Screen(is_symmetric(alpha), "alpha is not symmetric");
  for (std::size_t i = 0; i < d; ++i) {
    const double aii = alpha(i, i);
    Screen(aii >= 0.0 && aii <= static_cast<double>(m),
           "alpha(" + Index(i) + "," + Index(i) + ") = " +
               std::to_string(aii) + " outside [0, " + std::to_string(m) + "]");
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      Screen(alpha(i, j) >= 0.0 &&
                 alpha(i, j) <= std::min(aii, alpha(j, j)),
             "alpha(" + Index(i) + "," + Index(j) +
                 ") exceeds the smaller column sum");
    }
  }
  Screen(min_symmetric_pivot(alpha) >= -1e-9,
         "alpha is not positive semidefinite");

  IlpModel model;
  model.m_ = m;
  model.d_ = d;
  model.accounting_ = accounting;
  model.alpha_.resize(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      model.alpha_[i * d + j] = static_cast<std::int64_t>(alpha(i, j));
    }
  }

  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      model.vars_.push_back({Variable::Kind::kFeature, k, i, i,
                             "x_" + Index(k) + "_" + Index(i)});
    }
  }

  // Pair list in the chosen accounting.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      if (accounting == PairAccounting::kUnordered && j < i) continue;
      pairs.emplace_back(i, j);
    }
  }
  // product_var[p * m + k] is delta for pair p and sample k.
  std::vector<std::size_t> product_var(pairs.size() * m);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    for (std::size_t k = 0; k < m; ++k) {
      product_var[p * m + k] = model.vars_.size();
      model.vars_.push_back({Variable::Kind::kProduct, k, i, j,
                             "d_" + Index(i) + "_" + Index(j) + "_" +
                                 Index(k)});
    }
  }

  for (std::size_t i = 0; i < d; ++i) {
    Constraint c{"colsum_" + Index(i), {}, Relation::kEqual,
                 model.alpha_[i * d + i]};
    for (std::size_t k = 0; k < m; ++k) {
      c.terms.push_back({model.feature_var(k, i), 1});
    }
    model.constraints_.push_back(std::move(c));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    Constraint c{"pair_" + Index(i) + "_" + Index(j), {}, Relation::kEqual,
                 model.alpha_[i * d + j]};
    for (std::size_t k = 0; k < m; ++k) {
      c.terms.push_back({product_var[p * m + k], 1});
    }
    model.constraints_.push_back(std::move(c));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t xi = model.feature_var(k, i);
      const std::size_t xj = model.feature_var(k, j);
      const std::size_t del = product_var[p * m + k];
      const std::string tag = Index(i) + "_" + Index(j) + "_" + Index(k);
      // delta = 1 forces both features on.
      model.constraints_.push_back(
          {"and_hi_" + tag, {{xi, 1}, {xj, 1}, {del, -2}},
           Relation::kGreaterEqual, 0});
      // Both features on forces delta = 1.
      model.constraints_.push_back(
          {"and_lo_" + tag, {{xi, 1}, {xj, 1}, {del, -1}},
           Relation::kLessEqual, 1});
    }
  }
  return model;
}

std::vector<int> IlpModel::assignment_for(const Matrix& x) const {
  if (x.rows() != m_ || x.cols() != d_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "assignment for " + x.shape() + " in a " + std::to_string(m_) +
                    "x" + std::to_string(d_) + " model");
  }
  std::vector<int> values(vars_.size());
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    const Variable& var = vars_[v];
    const int xi = static_cast<int>(x(var.sample, var.first));
    values[v] = var.kind == Variable::Kind::kFeature
                    ? xi
                    : xi * static_cast<int>(x(var.sample, var.second));
  }
  return values;
}

bool IlpModel::satisfied_by(const std::vector<int>& assignment) const {
  if (assignment.size() != vars_.size()) return false;
  for (int v : assignment) {
    if (v != 0 && v != 1) return false;
  }
  for (const Constraint& c : constraints_) {
    std::int64_t lhs = 0;
    for (const LinearTerm& t : c.terms) lhs += t.coeff * assignment[t.var];
    switch (c.relation) {
      case Relation::kEqual:
        if (lhs != c.rhs) return false;
        break;
      case Relation::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

std::size_t count_constraints(std::size_t m, std::size_t d) {
  return (2 * m + 1) * d * d - 2 * m * d;
}

std::size_t count_constraints_unordered(std::size_t m, std::size_t d) {
  return d + d * (d - 1) / 2 + m * d * (d - 1);
}

std::string export_lp(const IlpModel& model) {
  std::ostringstream os;
  os << "\\ binary Gram reconstruction: m = " << model.samples()
     << ", d = " << model.features() << ", "
     << (model.accounting() == PairAccounting::kOrdered ? "ordered"
                                                        : "unordered")
     << " pairs, " << model.constraints().size() << " constraints\n";
  os << "Minimize\n obj: 0 " << model.variables().front().name << "\n";
  os << "Subject To\n";
  for (const Constraint& c : model.constraints()) {
    os << ' ' << c.name << ": ";
    for (std::size_t t = 0; t < c.terms.size(); ++t) {
      AppendTerm(os, c.terms[t], model.variables()[c.terms[t].var].name,
                 t == 0);
    }
    switch (c.relation) {
      case Relation::kEqual: os << " = "; break;
      case Relation::kLessEqual: os << " <= "; break;
      case Relation::kGreaterEqual: os << " >= "; break;
    }
    os << c.rhs << '\n';
  }
  os << "Binary\n";
  for (const Variable& v : model.variables()) os << ' ' << v.name << '\n';
  os << "End\n";
  return os.str();
}

Matrix canonical_form(const Matrix& x) {
  std::vector<std::vector<double>> rows;
  rows.reserve(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    rows.emplace_back(x.row(r).begin(), x.row(r).end());
  }
  std::sort(rows.begin(), rows.end());
  return Matrix::FromRows(rows);
}

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kUnique: return "unique";
    case SolveStatus::kMultiple: return "multiple";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kLimitReached: return "limit_reached";
  }
  return "unknown";
}

Verification verify_solution(const Matrix& x, const std::optional<Vector>& y,
                             const RecoveredSystem& system) {
  const std::size_t d = system.alpha.rows();
  if (x.cols() != d || system.beta.size() != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "solution " + x.shape() + " against a d = " +
                    std::to_string(d) + " system");
  }
  if (y && y->size() != x.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "label count != sample count");
  }
  for (double v : x.entries()) {
    if (!IsBinary(v)) return {false, "x has a non-binary entry"};
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < x.rows(); ++k) {
        s += static_cast<std::int64_t>(x(k, i)) *
             static_cast<std::int64_t>(x(k, j));
      }
      if (static_cast<double>(s) != system.alpha(i, j)) {
        return {false, "alpha(" + Index(i) + "," + Index(j) + ") expected " +
                           std::to_string(system.alpha(i, j)) + ", got " +
                           std::to_string(s)};
      }
    }
  }
  if (!y) return {};
  for (std::size_t k = 0; k < y->size(); ++k) {
    if ((*y)[k] != 1.0 && (*y)[k] != -1.0) {
      return {false, "y has an entry outside {-1, +1}"};
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < x.rows(); ++k) {
      s += static_cast<std::int64_t>(x(k, i)) *
           static_cast<std::int64_t>((*y)[k]);
    }
    if (static_cast<double>(s) != system.beta[i]) {
      return {false, "beta(" + Index(i) + ") expected " +
                         std::to_string(system.beta[i]) + ", got " +
                         std::to_string(s)};
    }
  }
  return {};
}

}  // namespace gleak
