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
#include "gleak/errors.h"

#include <sstream>

namespace gleak {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kNotIntegral: return "NotIntegral";
    case ErrorCode::kAsymmetryDetected: return "AsymmetryDetected";
    case ErrorCode::kResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::kInfeasibleScreen: return "InfeasibleScreen";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kDeadlineExceeded: return "DeadlineExceeded";
    case ErrorCode::kNoConsistentLabels: return "NoConsistentLabels";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

namespace {

std::string RankMessage(std::size_t rank, std::size_t required,
                        const std::string& context) {
  std::ostringstream os;
  os << context << ": numeric rank " << rank << " < required " << required;
  return os.str();
}

std::string IntegralMessage(std::size_t row, std::size_t col, double value,
                            double distance) {
  std::ostringstream os;
  os.precision(17);
  os << "entry (" << row << ", " << col << ") = " << value << " is "
     << distance << " from the nearest integer";
  return os.str();
}

}  // namespace

RankDeficientError::RankDeficientError(std::size_t numeric_rank,
                                       std::size_t required,
                                       const std::string& context)
    : Error(ErrorCode::kRankDeficient,
            RankMessage(numeric_rank, required, context)),
      numeric_rank_(numeric_rank),
      required_(required) {}

NotIntegralError::NotIntegralError(std::size_t row, std::size_t col,
                                   double value, double distance)
    : Error(ErrorCode::kNotIntegral,
            IntegralMessage(row, col, value, distance)),
      row_(row),
      col_(col),
      value_(value),
      distance_(distance) {}

}  // namespace gleak
