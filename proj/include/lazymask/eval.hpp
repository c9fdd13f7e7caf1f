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

#ifndef LAZYMASK_EVAL_HPP_
#define LAZYMASK_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "lazymask/decoder.hpp"
#include "lazymask/io.hpp"

namespace lazymask {

// Solution summary of one instance: its best feasible objective, if any,
// and how many of its generated solutions were infeasible.
struct InstanceOutcome {
  std::optional<double> best_objective;
  std::int64_t solutions = 0;
  std::int64_t infeasible_solutions = 0;
};

InstanceOutcome SummarizeResults(std::span<const DecodeResult> results);
InstanceOutcome SummarizeRecord(const ResultRecord& record);

struct EvalReport {
  std::vector<std::optional<double>> best_objectives;
  // Infeasible solutions / all solutions.
  double solution_infeasibility = 0.0;
  // Instances without a feasible solution / instances.
  double instance_infeasibility = 0.0;
  // Mean best objective over instances with a feasible solution.
  std::optional<double> average_objective;
  // Mean of (obj - ref) / ref over instances where both are feasible.
  std::optional<double> gap;
  std::int64_t gap_instances = 0;
  std::optional<double> wall_time_seconds;
};

// Throws ReferenceLengthMismatch when `reference` is given with a different
// instance count.
EvalReport Evaluate(std::span<const InstanceOutcome> outcomes,
                    std::optional<std::span<const std::optional<double>>> reference = std::nullopt);

nlohmann::json ReportToJson(const EvalReport& report);

}  // namespace lazymask

#endif  // LAZYMASK_EVAL_HPP_
