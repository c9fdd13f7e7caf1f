// Copyright 2026 The lazymask Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lazymask/eval.hpp"

#include <string>

#include "lazymask/errors.hpp"

namespace lazymask {

InstanceOutcome SummarizeResults(std::span<const DecodeResult> results) {
  InstanceOutcome out;
  out.solutions = static_cast<std::int64_t>(results.size());
  for (const DecodeResult& r : results) {
    if (!r.feasible) {
      ++out.infeasible_solutions;
    } else if (!out.best_objective || r.objective < *out.best_objective) {
      out.best_objective = r.objective;
    }
  }
  return out;
}

InstanceOutcome SummarizeRecord(const ResultRecord& record) {
  InstanceOutcome out;
  out.solutions = record.solutions;
  out.infeasible_solutions = record.infeasible_solutions;
  if (record.feasible) out.best_objective = record.objective;
  return out;
}

EvalReport Evaluate(std::span<const InstanceOutcome> outcomes,
                    std::optional<std::span<const std::optional<double>>> reference) {
  if (outcomes.empty()) throw Error("evaluation needs at least one instance");
  if (reference && reference->size() != outcomes.size()) {
    throw ReferenceLengthMismatch("reference has " + std::to_string(reference->size()) + " entries for " +
                                  std::to_string(outcomes.size()) + " instances");
  }
  EvalReport report;
  std::int64_t solutions = 0;
  std::int64_t infeasible = 0;
  std::int64_t unsolved = 0;
  double objective_sum = 0.0;
  std::int64_t solved = 0;
  double gap_sum = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const InstanceOutcome& o = outcomes[i];
    report.best_objectives.push_back(o.best_objective);
    solutions += o.solutions;
    infeasible += o.infeasible_solutions;
    if (!o.best_objective) {
      ++unsolved;
      continue;
    }
    objective_sum += *o.best_objective;
    ++solved;
    if (reference && (*reference)[i]) {
      const double ref = *(*reference)[i];
      gap_sum += (*o.best_objective - ref) / ref;
      ++report.gap_instances;
    }
  }
  report.solution_infeasibility = solutions > 0 ? static_cast<double>(infeasible) / static_cast<double>(solutions) : 0.0;
  report.instance_infeasibility = static_cast<double>(unsolved) / static_cast<double>(outcomes.size());
  if (solved > 0) report.average_objective = objective_sum / static_cast<double>(solved);
  if (report.gap_instances > 0) report.gap = gap_sum / static_cast<double>(report.gap_instances);
  return report;
}

nlohmann::json ReportToJson(const EvalReport& report) {
  using nlohmann::json;
  json best = json::array();
  for (const auto& b : report.best_objectives) best.push_back(b ? json(*b) : json(nullptr));
  json doc = {{"instances", report.best_objectives.size()},
              {"solution_infeasibility", report.solution_infeasibility},
              {"instance_infeasibility", report.instance_infeasibility},
              {"average_objective", report.average_objective ? json(*report.average_objective) : json(nullptr)},
              {"gap", report.gap ? json(*report.gap) : json(nullptr)},
              {"gap_instances", report.gap_instances},
              {"best_objectives", std::move(best)}};
  if (report.wall_time_seconds) doc["wall_time_seconds"] = *report.wall_time_seconds;
  return doc;
}

}  // namespace lazymask
