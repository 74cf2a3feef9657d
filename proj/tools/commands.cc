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
#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

namespace gleak::cli {
namespace {

using json = nlohmann::json;

constexpr std::size_t kDefaultAttackerBatch = 4;

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

template <typename T>
double Median(std::vector<T> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return static_cast<double>(values[mid]);
  return 0.5 * (static_cast<double>(values[mid - 1]) +
                static_cast<double>(values[mid]));
}

std::size_t ParseCount(std::string_view token) {
  std::size_t value = 0;
  const std::string s(token);
  std::size_t used = 0;
  try {
    value = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || value == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid entry '" + s + "' is not a positive integer");
  }
  return value;
}

std::vector<std::size_t> ParseList(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(ParseCount(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void Emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
}

json StatsJson(const SolverStats& s) {
  return {{"nodes_explored", s.nodes_explored},
          {"solutions_found", s.solutions_found},
          {"wall_time", s.wall_time},
          {"status", std::string(SolveStatusName(s.status))},
          {"exhausted", s.exhausted}};
}

}  // namespace

Transcript simulate(const SimulateConfig& config) {
  TrainingConfig training = config.training;
  const std::size_t d = config.features;
  if (config.batch_size == 0 || d == 0 || config.victim_batches == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "batch size, features and batches must be >= 1");
  }
  if (training.mode == Mode::kSynchronized && config.victim_batches != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "synchronized parties hold exactly one batch");
  }
  if (training.rounds == 0) training.rounds = d + 1;
  if (training.attacker_batch_size == 0) {
    training.attacker_batch_size = kDefaultAttackerBatch;
  }
  if (training.parties < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 2 parties");
  }

  Rng data(SplitMix(training.seed));
  std::vector<PartyData> victims(training.parties - 1);
  for (PartyData& party : victims) {
    for (std::size_t b = 0; b < config.victim_batches; ++b) {
      party.batches.push_back(random_batch(config.batch_size, d, data));
    }
  }
  const std::size_t pool = config.attacker_pool == 0 ? 2 * d : config.attacker_pool;
  const Batch attacker = random_batch(pool, d, data);
  return run_training(victims, attacker, training);
}

std::string simulate_summary(const Transcript& t) {
  std::ostringstream s;
  s << "simulated " << t.config.rounds << " rounds, mode "
    << ModeName(t.config.mode) << ", " << t.config.parties << " parties, d = "
    << t.observations.front().theta.size() << "\n";
  return s.str();
}

AttackReport attack(const Transcript& transcript,
                    const RecoveryOptions& options) {
  AttackReport report;
  report.mode = transcript.config.mode;
  report.lambda = transcript.config.lambda;
  if (report.mode == Mode::kSynchronized) {
    report.system =
        recover_alpha_beta(transcript.observations, report.lambda, options);
  } else {
    report.closed_form =
        recover_gamma_eta(transcript.observations, report.lambda, options);
  }
  return report;
}

Reconstruction reconstruct(const AttackReport& report,
                           const ReconstructConfig& config) {
  if (!report.system) {
    throw Error(ErrorCode::kInvalidArgument,
                "reconstruction needs an integral alpha; asynchronized "
                "reports only carry gamma and eta");
  }
  const RecoveredSystem& system = *report.system;
  std::size_t batch_size = 0;
  SolveResult result;
  if (config.batch_size) {
    batch_size = *config.batch_size;
    result = solve(build_model(system.alpha, batch_size), config.solve);
  } else {
    Discovery found =
        discover_batch_size(system.alpha, config.max_batch_size, config.solve);
    batch_size = found.batch_size;
    result = std::move(found.result);
  }
  if (result.solutions.empty()) {
    if (result.stats.status == SolveStatus::kLimitReached) {
      throw Error(ErrorCode::kDeadlineExceeded,
                  "deadline hit before any candidate was found");
    }
    throw Error(ErrorCode::kInfeasible,
                "no binary " + std::to_string(batch_size) +
                    "-row batch has this Gram matrix");
  }
  std::optional<Solution> best;
  std::size_t consistent = 0;
  for (const Solution& candidate : result.solutions) {
    const std::vector<Vector> labels =
        enumerate_labels(candidate.x, system.beta, 1);
    if (labels.empty()) continue;
    ++consistent;
    if (!best) best = Solution{candidate.x, labels.front()};
  }
  if (!best) {
    throw Error(ErrorCode::kNoConsistentLabels,
                "no candidate batch admits labels matching beta");
  }
  return Reconstruction{batch_size, std::move(result), std::move(*best),
                        consistent};
}

Grid parse_grid(std::string_view text) {
  const std::size_t x = text.find('x');
  if (x == std::string_view::npos || text.find('x', x + 1) != std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid must look like 3,5,8x5,10 (batch sizes x features)");
  }
  const std::vector<std::size_t> ms = ParseList(text.substr(0, x));
  const std::vector<std::size_t> ds = ParseList(text.substr(x + 1));
  Grid grid;
  for (std::size_t m : ms) {
    for (std::size_t d : ds) grid.emplace_back(m, d);
  }
  return grid;
}

std::string CellReport::status() const {
  if (multiple > 0) return "multiple";
  if (limit_reached > 0) return "limit_reached";
  if (infeasible > 0) return "infeasible";
  return "unique";
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t m, std::size_t d,
                         std::size_t trial) {
  std::uint64_t h = SplitMix(seed);
  h = SplitMix(h ^ m);
  h = SplitMix(h ^ d);
  return SplitMix(h ^ trial);
}

std::vector<CellReport> table1(const Table1Config& config) {
  if (config.trials == 0) {
    throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  }
  if (!(config.solve.deadline_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "deadline must be > 0");
  }
  std::vector<CellReport> cells(config.grid.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto [m, d] = config.grid[c];
    if (m == 0 || d == 0) {
      throw Error(ErrorCode::kInvalidArgument, "grid cells need m, d >= 1");
    }
    cells[c].m = m;
    cells[c].d = d;
    cells[c].constraints = count_constraints(m, d);
    cells[c].trials.resize(config.trials);
  }

  const std::size_t tasks = cells.size() * config.trials;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      CellReport& cell = cells[t / config.trials];
      TrialRecord& record = cell.trials[t % config.trials];
      record.seed = trial_seed(config.seed, cell.m, cell.d, t % config.trials);
      Rng rng(record.seed);
      const Batch batch = random_batch(cell.m, cell.d, rng);
      const SolveResult r = solve(build_model(gram(batch), cell.m), config.solve);
      record.stats = r.stats;
      record.solutions = r.solutions.size();
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, tasks));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (CellReport& cell : cells) {
    std::vector<double> seconds;
    std::vector<std::uint64_t> nodes;
    for (const TrialRecord& r : cell.trials) {
      seconds.push_back(r.stats.wall_time);
      nodes.push_back(r.stats.nodes_explored);
      switch (r.stats.status) {
        case SolveStatus::kUnique: ++cell.unique; break;
        case SolveStatus::kMultiple: ++cell.multiple; break;
        case SolveStatus::kInfeasible: ++cell.infeasible; break;
        case SolveStatus::kLimitReached: ++cell.limit_reached; break;
      }
    }
    cell.median_seconds = Median(seconds);
    cell.median_nodes = static_cast<std::uint64_t>(Median(nodes));
  }
  return cells;
}

std::string table1_csv(const std::vector<CellReport>& cells) {
  std::ostringstream s;
  s << "m,d,constraints,median_seconds,status,trials,unique,multiple,"
       "limit_reached,median_nodes\n";
  for (const CellReport& c : cells) {
    s << c.m << ',' << c.d << ',' << c.constraints << ','
      << std::setprecision(6) << std::scientific << c.median_seconds
      << std::defaultfloat << ',' << c.status() << ',' << c.trials.size()
      << ',' << c.unique << ',' << c.multiple << ',' << c.limit_reached << ','
      << c.median_nodes << '\n';
  }
  return s.str();
}

std::string table1_json(const std::vector<CellReport>& cells) {
  json doc = json::array();
  for (const CellReport& c : cells) {
    json trials = json::array();
    for (const TrialRecord& r : c.trials) {
      trials.push_back({{"seed", r.seed},
                        {"solutions", r.solutions},
                        {"stats", StatsJson(r.stats)}});
    }
    doc.push_back({{"m", c.m},
                   {"d", c.d},
                   {"constraints", c.constraints},
                   {"median_seconds", c.median_seconds},
                   {"median_nodes", c.median_nodes},
                   {"status", c.status()},
                   {"unique", c.unique},
                   {"multiple", c.multiple},
                   {"infeasible", c.infeasible},
                   {"limit_reached", c.limit_reached},
                   {"trials", trials}});
  }
  return doc.dump(1) + "\n";
}

bool TheoremsReport::passed() const {
  if (!failing_seeds.empty() || !(base_case_deviation <= tolerance)) {
    return false;
  }
  return std::all_of(nullity.begin(), nullity.end(),
                     [](const NullityRow& r) { return r.ok(); });
}

TheoremsReport theorems(const TheoremsConfig& config) {
  if (config.max_batches == 0 || config.max_features == 0 ||
      config.max_batch_size == 0 || config.lambdas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty theorem parameter range");
  }
  TheoremsReport report;
  report.trials = config.trials;
  report.tolerance = config.tolerance;

  // Sweep n and lambda deterministically so every combination appears.
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = trial_seed(config.seed, 1, 0, t);
    Rng rng(seed);
    const std::size_t n = 1 + t % config.max_batches;
    const std::size_t d = 1 + (t / config.max_batches) % config.max_features;
    const double lambda = config.lambdas[t % config.lambdas.size()];
    std::uniform_int_distribution<std::size_t> rows(1, config.max_batch_size);
    std::vector<Batch> batches;
    std::vector<Matrix> alphas;
    std::vector<Vector> betas;
    for (std::size_t i = 0; i < n; ++i) {
      batches.push_back(random_batch(rows(rng), d, rng));
      alphas.push_back(gram(batches.back()));
      betas.push_back(label_correlation(batches.back()));
    }
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vector theta(d);
    for (double& v : theta) v = unit(rng);
    const double dev =
        max_abs_diff(closed_form_delta(alphas, betas, theta, lambda),
                     async_local_pass(batches, theta, lambda));
    if (dev > report.max_deviation || t == 0) {
      report.max_deviation = dev;
      report.worst_seed = seed;
    }
    if (!(dev < config.tolerance)) report.failing_seeds.push_back(seed);

    // One batch: the closed form is lambda times the plain gradient.
    const Vector single = closed_form_delta(std::span(alphas.data(), 1),
                                            std::span(betas.data(), 1), theta,
                                            lambda);
    report.base_case_deviation =
        std::max(report.base_case_deviation,
                 max_abs_diff(single, lambda * batch_gradient(batches[0], theta)));
  }

  for (std::size_t n : config.nullity_batches) {
    for (std::size_t d : config.nullity_features) {
      for (std::size_t p = 0; p < config.nullity_points; ++p) {
        Rng rng(trial_seed(config.seed, 2 + n, d, p));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<Matrix> alphas;
        for (std::size_t i = 0; i < n; ++i) {
          Matrix a(d, d);
          for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = r; c < d; ++c) a(r, c) = a(c, r) = unit(rng);
          }
          alphas.push_back(std::move(a));
        }
        report.nullity.push_back(
            NullityRow{n, d, p, gamma_nullity_check(alphas, 0.1)});
      }
    }
  }
  return report;
}

std::string theorems_json(const TheoremsReport& r) {
  json nullity = json::array();
  for (const NullityRow& row : r.nullity) {
    nullity.push_back({{"n", row.n},
                       {"d", row.d},
                       {"point", row.point},
                       {"jacobian_rank", row.report.jacobian_rank},
                       {"variables", row.report.variable_count},
                       {"nullity", row.report.nullity},
                       {"counting_bound", row.report.counting_bound},
                       {"ok", row.ok()}});
  }
  const json doc = {{"passed", r.passed()},
                    {"closed_form", {{"trials", r.trials},
                                     {"tolerance", r.tolerance},
                                     {"max_deviation", r.max_deviation},
                                     {"worst_seed", r.worst_seed},
                                     {"failing_seeds", r.failing_seeds},
                                     {"base_case_deviation",
                                      r.base_case_deviation}}},
                    {"nullity", nullity}};
  return doc.dump(1) + "\n";
}

std::string theorems_text(const TheoremsReport& r) {
  std::ostringstream s;
  s << "closed form vs simulated: " << r.trials << " trials, max deviation "
    << r.max_deviation << " (worst seed " << r.worst_seed << ")\n";
  s << "single batch vs gradient: max deviation " << r.base_case_deviation
    << "\n";
  for (const NullityRow& row : r.nullity) {
    s << "nullity n=" << row.n << " d=" << row.d << " point " << row.point
      << ": " << row.report.nullity << " >= " << row.report.counting_bound
      << (row.ok() ? "  ok" : "  FAILED") << "\n";
  }
  s << (r.passed() ? "all checks passed" : "CHECKS FAILED") << "\n";
  return s.str();
}

int exit_code_for(ErrorCode code) { return 10 + static_cast<int>(code); }

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Gradient leakage workbench for federated approximated "
               "logistic regression"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 1;
  double lambda = 0.1;
  std::string mode = "synchronized";

  SimulateConfig sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run federated training and write a transcript");
  simulate_cmd->add_option("--seed", seed, "Seed for data and training");
  simulate_cmd->add_option("--lambda", lambda, "Learning rate")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--mode", mode, "synchronized or asynchronized");
  simulate_cmd->add_option("--parties", sim.training.parties, "Parties including the attacker")->check(CLI::Range(2, 1 << 16));
  simulate_cmd->add_option("--rounds", sim.training.rounds, "Rounds; 0 means d + 1");
  simulate_cmd->add_option("-m,--batch-size", sim.batch_size, "Rows per victim batch")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("-d,--features", sim.features, "Feature count")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--batches", sim.victim_batches, "Batches per victim (asynchronized)")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--attacker-pool", sim.attacker_pool, "Attacker pool rows; 0 means 2d");
  simulate_cmd->add_option("--attacker-batch", sim.training.attacker_batch_size, "Rows the attacker samples per round; 0 means 4");
  simulate_cmd->add_flag("--shuffle", sim.training.shuffle, "Victims reshuffle batch order each round");
  simulate_cmd->add_option("--out", out_path, "Transcript path (default stdout)");

  std::string in_path;
  auto* attack_cmd = app.add_subcommand("attack", "Recover the leaked system from a transcript");
  attack_cmd->add_option("transcript", in_path, "Transcript JSON")->required();
  attack_cmd->add_option("--out", out_path, "Report path (default stdout)");

  ReconstructConfig rec;
  std::size_t rec_m = 0;
  std::size_t limit = 2;
  double deadline = std::numeric_limits<double>::infinity();
  bool discover = false;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Rebuild the batch from a synchronized report");
  reconstruct_cmd->add_option("report", in_path, "Attack report JSON")->required();
  auto* m_opt = reconstruct_cmd->add_option("-m,--batch-size", rec_m, "Known batch size")->check(CLI::PositiveNumber);
  reconstruct_cmd->add_flag("--discover", discover, "Search for the smallest feasible batch size")->excludes(m_opt);
  reconstruct_cmd->add_option("--max-batch-size", rec.max_batch_size, "Upper end of the discovery search")->check(CLI::PositiveNumber);
  reconstruct_cmd->add_option("--limit", limit, "Stop after this many candidates; 0 enumerates all");
  reconstruct_cmd->add_option("--deadline", deadline, "Solver deadline in seconds")->check(CLI::PositiveNumber);
  reconstruct_cmd->add_option("--out", out_path, "Solution path (default stdout)");

  Table1Config grid;
  std::string grid_text = "3,5,8,9,11x5,10,15,20";
  std::string format;
  std::size_t grid_limit = 2;
  double grid_deadline = 60.0;
  auto* table1_cmd = app.add_subcommand("table1", "Time the reconstruction over an (m, d) grid");
  table1_cmd->add_option("--grid", grid_text, "Batch sizes x features, e.g. 3,5x5,10");
  table1_cmd->add_option("--trials", grid.trials, "Trials per cell")->check(CLI::PositiveNumber);
  table1_cmd->add_option("--seed", seed, "Base seed");
  table1_cmd->add_option("--limit", grid_limit, "Candidates to look for; 2 separates unique from multiple");
  table1_cmd->add_option("--deadline", grid_deadline, "Per-trial solver deadline in seconds")->check(CLI::PositiveNumber);
  table1_cmd->add_option("--jobs", grid.jobs, "Worker threads")->check(CLI::PositiveNumber);
  table1_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  table1_cmd->add_option("--out", out_path, "Report path (default stdout)");

  TheoremsConfig thm;
  auto* theorems_cmd = app.add_subcommand("theorems", "Check the closed form and the nullity bound");
  theorems_cmd->add_option("--seed", seed, "Base seed");
  theorems_cmd->add_option("--trials", thm.trials, "Closed-form trials");
  theorems_cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  theorems_cmd->add_option("--out", out_path, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    // Without --out the report owns stdout and the summary goes to stderr.
    std::ostream& note = out_path.empty() ? err : out;
    if (*simulate_cmd) {
      sim.training.seed = seed;
      sim.training.lambda = lambda;
      sim.training.mode = ParseMode(mode);
      const Transcript t = simulate(sim);
      Emit(transcript_to_json(t), out_path, out);
      note << simulate_summary(t);
    } else if (*attack_cmd) {
      const AttackReport report = attack(transcript_from_json(ReadFile(in_path)));
      Emit(attack_report_to_json(report), out_path, out);
      const RecoveryDiagnostics& diag = report.system
                                            ? report.system->diagnostics
                                            : report.closed_form->diagnostics;
      note << "recovered " << (report.system ? "alpha, beta" : "gamma, eta")
           << " from " << diag.observations << " observations, fit residual "
           << diag.fit_residual << "\n";
    } else if (*reconstruct_cmd) {
      if (*m_opt) rec.batch_size = rec_m;
      rec.solve.limit = limit;
      rec.solve.deadline_seconds = deadline;
      const Reconstruction r =
          reconstruct(attack_report_from_json(ReadFile(in_path)), rec);
      Emit(solution_to_json(r.best, r.result.stats, r.consistent), out_path, out);
      note << "m = " << r.batch_size << ", status "
           << SolveStatusName(r.result.stats.status) << ", "
           << r.result.solutions.size() << " candidate(s)\n";
    } else if (*table1_cmd) {
      grid.grid = parse_grid(grid_text);
      grid.seed = seed;
      grid.solve.limit = grid_limit;
      grid.solve.deadline_seconds = grid_deadline;
      const std::vector<CellReport> cells = table1(grid);
      Emit(format == "json" ? table1_json(cells) : table1_csv(cells), out_path,
           out);
    } else if (*theorems_cmd) {
      thm.seed = seed;
      const TheoremsReport report = theorems(thm);
      Emit(format == "text" ? theorems_text(report) : theorems_json(report),
           out_path, out);
      if (!report.passed()) {
        err << "theorem checks failed; counterexample seeds:";
        for (std::uint64_t s : report.failing_seeds) err << ' ' << s;
        err << "\n";
        return 1;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace gleak::cli
