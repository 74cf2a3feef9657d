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
#ifndef GLEAK_JSON_IO_H_
#define GLEAK_JSON_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "gleak/attack.h"
#include "gleak/fedsim.h"
#include "gleak/reconstruct.h"

namespace gleak {

// Transcript document:
//   {"config": {"lambda", "mode", "parties", "rounds", "shuffle", "seed",
//               "attacker_batch_size"},
//    "observations": [{"theta": [...], "delta": [...]}, ...],
//    "ground_truth": [{"party": p, "x": [[0/1...]...], "y": [+-1...]}, ...]}
// Doubles are written with round-trip precision, so a parsed transcript is
// bit-identical to the one that was written. All parsers throw kParse.
std::string transcript_to_json(const Transcript& transcript);
Transcript transcript_from_json(std::string_view text);

// Attack report. "mode" selects which of the two payloads is present:
//   synchronized:  {"alpha": [[...]], "beta": [...]}
//   asynchronized: {"gamma": [[...]], "eta": [...]}
// plus "lambda" and a "diagnostics" object.
struct AttackReport {
  Mode mode = Mode::kSynchronized;
  double lambda = 0.0;
  std::optional<RecoveredSystem> system;
  std::optional<ClosedFormParams> closed_form;
};

std::string attack_report_to_json(const AttackReport& report);
AttackReport attack_report_from_json(std::string_view text);

// {"m": ..., "x": [[...]], "y": [...], "status": "...", "candidates": n,
//  "stats": {...}}
std::string solution_to_json(const Solution& solution,
                             const SolverStats& stats,
                             std::size_t candidates);

}  // namespace gleak

#endif  // GLEAK_JSON_IO_H_
