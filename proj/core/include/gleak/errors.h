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

#ifndef GLEAK_ERRORS_H_
#define GLEAK_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gleak {

// Every failure surfaced by the library carries one of these codes. The CLI
// maps them onto distinct process exit codes.
enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kRankDeficient,
  kNotIntegral,
  kAsymmetryDetected,
  kResidualTooLarge,
  kInfeasibleScreen,
  kInfeasible,
  kDeadlineExceeded,
  kNoConsistentLabels,
  kParse,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by elimination when a pivot falls below the relative tolerance.
class RankDeficientError : public Error {
 public:
  RankDeficientError(std::size_t numeric_rank, std::size_t required,
                     const std::string& context);

  std::size_t numeric_rank() const noexcept { return numeric_rank_; }
  std::size_t required_rank() const noexcept { return required_; }

 private:
  std::size_t numeric_rank_;
  std::size_t required_;
};

// Raised by round_integral; reports the entry farthest from an integer.
class NotIntegralError : public Error {
 public:
  NotIntegralError(std::size_t row, std::size_t col, double value,
                   double distance);

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }
  double value() const noexcept { return value_; }
  double distance() const noexcept { return distance_; }

 private:
  std::size_t row_;
  std::size_t col_;
  double value_;
  double distance_;
};

}  // namespace gleak

#endif  // GLEAK_ERRORS_H_
