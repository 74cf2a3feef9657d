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
#include "gleak/json_io.h"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "gleak/errors.h"

namespace gleak {
namespace {

using nlohmann::json;

json ToJson(const Vector& v) { return json(v.values()); }

json ToJson(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

// Binary matrices and +-1 vectors are written as integers.
json ToIntJson(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<int> row;
    for (double v : m.row(r)) row.push_back(static_cast<int>(v));
    rows.push_back(row);
  }
  return rows;
}

json ToIntJson(const Vector& v) {
  std::vector<int> out;
  for (double x : v) out.push_back(static_cast<int>(x));
  return out;
}

Vector VectorFrom(const json& j) {
  return Vector(j.get<std::vector<double>>());
}

Matrix MatrixFrom(const json& j) {
  return Matrix::FromRows(j.get<std::vector<std::vector<double>>>());
}

json DiagnosticsJson(const RecoveryDiagnostics& d) {
  return {{"observations", d.observations},
          {"design_rank", d.design_rank},
          {"fit_residual", d.fit_residual},
          {"asymmetry", d.asymmetry},
          {"alpha_integrality", d.alpha_integrality},
          {"beta_integrality", d.beta_integrality},
          {"min_pivot", d.min_pivot}};
}

RecoveryDiagnostics DiagnosticsFrom(const json& j) {
  RecoveryDiagnostics d;
  if (j.is_null()) return d;
  d.observations = j.value("observations", std::size_t{0});
  d.design_rank = j.value("design_rank", std::size_t{0});
  d.fit_residual = j.value("fit_residual", 0.0);
  d.asymmetry = j.value("asymmetry", 0.0);
  d.alpha_integrality = j.value("alpha_integrality", 0.0);
  d.beta_integrality = j.value("beta_integrality", 0.0);
  d.min_pivot = j.value("min_pivot", 0.0);
  return d;
}

template <typename Fn>
auto Parse(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string transcript_to_json(const Transcript& transcript) {
  const TrainingConfig& c = transcript.config;
  json doc;
  doc["config"] = {{"lambda", c.lambda},
                   {"mode", std::string(ModeName(c.mode))},
                   {"parties", c.parties},
                   {"rounds", c.rounds},
                   {"shuffle", c.shuffle},
                   {"seed", c.seed},
                   {"attacker_batch_size", c.attacker_batch_size}};
  json obs = json::array();
  for (const Observation& o : transcript.observations) {
    obs.push_back({{"theta", ToJson(o.theta)}, {"delta", ToJson(o.delta)}});
  }
  doc["observations"] = std::move(obs);
  json truth = json::array();
  for (std::size_t p = 0; p < transcript.ground_truth.size(); ++p) {
    for (const Batch& b : transcript.ground_truth[p].batches) {
      truth.push_back(
          {{"party", p}, {"x", ToIntJson(b.x())}, {"y", ToIntJson(b.y())}});
    }
  }
  doc["ground_truth"] = std::move(truth);
  return doc.dump(1) + "\n";
}

Transcript transcript_from_json(std::string_view text) {
  return Parse("transcript", [&] {
    const json doc = json::parse(text);
    Transcript t;
    const json& c = doc.at("config");
    t.config.lambda = c.at("lambda").get<double>();
    t.config.mode = ParseMode(c.at("mode").get<std::string>());
    t.config.parties = c.at("parties").get<std::size_t>();
    t.config.rounds = c.at("rounds").get<std::size_t>();
    t.config.shuffle = c.at("shuffle").get<bool>();
    t.config.seed = c.at("seed").get<std::uint64_t>();
    t.config.attacker_batch_size =
        c.value("attacker_batch_size", std::size_t{0});
    for (const json& o : doc.at("observations")) {
      t.observations.push_back(
          {VectorFrom(o.at("theta")), VectorFrom(o.at("delta"))});
    }
    if (t.observations.size() != t.config.rounds) {
      throw Error(ErrorCode::kParse,
                  "observation count does not match config.rounds");
    }
    std::map<std::size_t, PartyData> parties;
    for (const json& b : doc.value("ground_truth", json::array())) {
      parties[b.at("party").get<std::size_t>()].batches.emplace_back(
          MatrixFrom(b.at("x")), VectorFrom(b.at("y")));
    }
    for (auto& [index, party] : parties) {
      t.ground_truth.push_back(std::move(party));
    }
    return t;
  });
}

std::string attack_report_to_json(const AttackReport& report) {
  json doc;
  doc["mode"] = std::string(ModeName(report.mode));
  doc["lambda"] = report.lambda;
  if (report.system) {
    doc["alpha"] = ToJson(report.system->alpha);
    doc["beta"] = ToJson(report.system->beta);
    doc["diagnostics"] = DiagnosticsJson(report.system->diagnostics);
  }
  if (report.closed_form) {
    doc["gamma"] = ToJson(report.closed_form->gamma);
    doc["eta"] = ToJson(report.closed_form->eta);
    doc["diagnostics"] = DiagnosticsJson(report.closed_form->diagnostics);
  }
  return doc.dump(1) + "\n";
}

AttackReport attack_report_from_json(std::string_view text) {
  return Parse("attack report", [&] {
    const json doc = json::parse(text);
    AttackReport r;
    r.mode = ParseMode(doc.at("mode").get<std::string>());
    r.lambda = doc.at("lambda").get<double>();
    const RecoveryDiagnostics diag =
        DiagnosticsFrom(doc.value("diagnostics", json()));
    if (doc.contains("alpha")) {
      r.system = RecoveredSystem{MatrixFrom(doc.at("alpha")),
                                 VectorFrom(doc.at("beta")), diag};
    }
    if (doc.contains("gamma")) {
      r.closed_form = ClosedFormParams{MatrixFrom(doc.at("gamma")),
                                       VectorFrom(doc.at("eta")), r.lambda,
                                       diag};
    }
    if (!r.system && !r.closed_form) {
      throw Error(ErrorCode::kParse, "report carries neither alpha nor gamma");
    }
    return r;
  });
}

std::string solution_to_json(const Solution& solution,
                             const SolverStats& stats,
                             std::size_t candidates) {
  json doc;
  doc["m"] = solution.x.rows();
  doc["d"] = solution.x.cols();
  doc["x"] = ToIntJson(solution.x);
  doc["y"] = solution.y ? ToIntJson(*solution.y) : json(nullptr);
  doc["status"] = std::string(SolveStatusName(stats.status));
  doc["candidates"] = candidates;
  doc["stats"] = {{"nodes_explored", stats.nodes_explored},
                  {"solutions_found", stats.solutions_found},
                  {"wall_time", stats.wall_time},
                  {"status", std::string(SolveStatusName(stats.status))},
                  {"exhausted", stats.exhausted},
                  {"constraints_ordered", stats.constraints_ordered},
                  {"constraints_unordered", stats.constraints_unordered}};
  return doc.dump(1) + "\n";
}

}  // namespace gleak
