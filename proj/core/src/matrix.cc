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
#include "gleak/matrix.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gleak/errors.h"

namespace gleak {
namespace {

void RequireSameShape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(op) + ": " + a.shape() + " vs " + b.shape());
  }
}

void RequireSameSize(const Vector& a, const Vector& b, const char* op) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(op) + ": length " + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()));
  }
}

}  // namespace

Vector::Vector(std::size_t len, double fill) : data_(len, fill) {
  if (len == 0) throw Error(ErrorCode::kInvalidArgument, "empty vector");
}

Vector::Vector(std::vector<double> entries) : data_(std::move(entries)) {
  if (data_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty vector");
}

Vector::Vector(std::initializer_list<double> entries)
    : Vector(std::vector<double>(entries)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix with zero extent");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix with zero extent");
  }
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "entry count " + std::to_string(data_.size()) +
                    " does not match " + shape());
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : Matrix(FromRows(std::vector<std::vector<double>>(rows.begin(),
                                                       rows.end()))) {}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix with zero extent");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    }
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), cols, std::move(data));
}

Matrix Matrix::Column(const Vector& v) {
  return Matrix(v.size(), 1, v.values());
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::string Matrix::shape() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  }
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matmul: " + a.shape() + " x " + b.shape());
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Vector matvec(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matvec: " + a.shape() + " x length " +
                    std::to_string(x.size()));
  }
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    out[i] = s;
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  RequireSameShape(a, b, "add");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  RequireSameShape(a, b, "subtract");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
  }
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= s;
  }
  return out;
}

Vector operator+(const Vector& a, const Vector& b) {
  RequireSameSize(a, b, "add");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  RequireSameSize(a, b, "subtract");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vector operator*(double s, const Vector& a) {
  Vector out = a;
  for (double& v : out) v *= s;
  return out;
}

Matrix outer(const Vector& u, const Vector& v) {
  Matrix out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * v[j];
  }
  return out;
}

double dot(const Vector& a, const Vector& b) {
  RequireSameSize(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  RequireSameShape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

double max_abs_diff(const Vector& a, const Vector& b) {
  RequireSameSize(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double max_abs(const Matrix& a) {
  double worst = 0.0;
  for (double v : a.entries()) worst = std::max(worst, std::abs(v));
  return worst;
}

double max_abs(const Vector& a) {
  double worst = 0.0;
  for (double v : a) worst = std::max(worst, std::abs(v));
  return worst;
}

bool is_symmetric(const Matrix& a, double tol) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
    }
  }
  return true;
}

Matrix submatrix(const Matrix& a, std::span<const std::size_t> rows,
                 std::span<const std::size_t> cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (rows[r] >= a.rows() || cols[c] >= a.cols()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "submatrix index outside " + a.shape());
      }
      out(r, c) = a(rows[r], cols[c]);
    }
  }
  return out;
}

Vector subvector(const Vector& v, std::span<const std::size_t> idx) {
  Vector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= v.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "subvector index");
    }
    out[i] = v[idx[i]];
  }
  return out;
}

}  // namespace gleak
