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
#ifndef GLEAK_TOOLS_COMMANDS_H_
#define GLEAK_TOOLS_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gleak/attack.h"
#include "gleak/errors.h"
#include "gleak/fedsim.h"
#include "gleak/json_io.h"
#include "gleak/reconstruct.h"

namespace gleak::cli {

// Every command is a pure function of its config; the argv front end in
// run() only adds file I/O and exit codes.

struct SimulateConfig {
  // rounds == 0 picks d + 1, the fewest a full recovery can use.
  TrainingConfig training{.rounds = 0};
  std::size_t batch_size = 5;      // m, rows per victim batch
  std::size_t features = 10;       // d
  std::size_t victim_batches = 1;  // per victim; > 1 only when asynchronized
  std::size_t attacker_pool = 0;   // 0 -> 2d rows
};

// Draws victim batches and the attacker pool from the seed, then trains.
Transcript simulate(const SimulateConfig& config);
std::string simulate_summary(const Transcript& transcript);

// Synchronized transcripts yield (alpha, beta); asynchronized ones yield
// (gamma, eta).
AttackReport attack(const Transcript& transcript,
                    const RecoveryOptions& options = {});

struct ReconstructConfig {
  // Unset: search for the smallest feasible batch size up to max_batch_size.
  std::optional<std::size_t> batch_size;
  std::size_t max_batch_size = 32;
  SolveOptions solve{.limit = 2};
};

struct Reconstruction {
  std::size_t batch_size = 0;
  SolveResult result;
  // First canonical candidate that also admits labels; y is set when found.
  Solution best;
  // Canonical candidates that admit at least one labeling.
  std::size_t consistent = 0;
};

// Throws kInvalidArgument for a report without alpha, kInfeasible when no
// batch matches, kDeadlineExceeded when the deadline left no candidate.
Reconstruction reconstruct(const AttackReport& report,
                           const ReconstructConfig& config);

using Grid = std::vector<std::pair<std::size_t, std::size_t>>;

// "3,5,8x5,10" is the product {3,5,8} x {5,10} of (m, d) pairs.
Grid parse_grid(std::string_view text);

struct Table1Config {
  Grid grid = parse_grid("3,5,8,9,11x5,10,15,20");
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  SolveOptions solve{.limit = 2, .deadline_seconds = 60.0};
  std::size_t jobs = 1;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  SolverStats stats;
  std::size_t solutions = 0;
};

struct CellReport {
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t constraints = 0;
  std::vector<TrialRecord> trials;
  double median_seconds = 0.0;
  std::uint64_t median_nodes = 0;
  std::size_t unique = 0;
  std::size_t multiple = 0;
  std::size_t infeasible = 0;
  std::size_t limit_reached = 0;

  // "multiple" if any trial had two batches, else "limit_reached" if any
  // trial hit the deadline, else "unique".
  std::string status() const;
};

// Per-trial seeds depend only on (seed, m, d, trial), so results do not
// depend on jobs or scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t m, std::size_t d,
                         std::size_t trial);
std::vector<CellReport> table1(const Table1Config& config);
std::string table1_csv(const std::vector<CellReport>& cells);
std::string table1_json(const std::vector<CellReport>& cells);

struct TheoremsConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::size_t max_batches = 5;
  std::size_t max_features = 10;
  std::size_t max_batch_size = 8;
  std::vector<double> lambdas{0.01, 0.1, 0.5};
  double tolerance = 1e-9;
  std::vector<std::size_t> nullity_batches{2, 3};
  std::vector<std::size_t> nullity_features{2, 3, 4};
  std::size_t nullity_points = 5;
};

struct NullityRow {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t point = 0;
  NullityReport report;
  bool ok() const {
    return report.counting_bound > 0 &&
           report.nullity >= report.counting_bound;
  }
};

struct TheoremsReport {
  std::size_t trials = 0;
  double max_deviation = 0.0;
  std::uint64_t worst_seed = 0;
  std::vector<std::uint64_t> failing_seeds;
  double base_case_deviation = 0.0;
  std::vector<NullityRow> nullity;
  double tolerance = 0.0;
  bool passed() const;
};

TheoremsReport theorems(const TheoremsConfig& config);
std::string theorems_json(const TheoremsReport& report);
std::string theorems_text(const TheoremsReport& report);

// 0 is success, 1 a failed check, 2 a usage error; each ErrorCode maps to
// its own code from 10 up.
int exit_code_for(ErrorCode code);

// Full command line front end. Reports go to --out when given, else to out.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace gleak::cli

#endif  // GLEAK_TOOLS_COMMANDS_H_
