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

#ifndef LAZYMASK_IO_HPP_
#define LAZYMASK_IO_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lazymask/constraints.hpp"
#include "lazymask/instance.hpp"
#include "lazymask/policy.hpp"

namespace lazymask {

// Instance document:
//   {"kind": "tsptw"|"tspdl", "coords": [[x, y], ...],
//    "tw": [[e, l], ...], "service": [s, ...],      (tsptw)
//    "demand": [q, ...], "draft": [D, ...]}         (tspdl)
// An unbounded due time is written as null.
nlohmann::json InstanceToJson(const RoutingInstance& instance);
// Throws SchemaViolation naming the offending JSON path.
RoutingInstance InstanceFromJson(const nlohmann::json& doc);

std::string SerializeInstance(const RoutingInstance& instance);
RoutingInstance DeserializeInstance(std::string_view text);

// Line-delimited dataset, one instance document per line.
void WriteDataset(std::ostream& out, std::span<const RoutingInstance> instances);
std::vector<RoutingInstance> ReadDataset(std::istream& in);

// Whitespace-columnar TSPTW text: optional header lines, then one row per
// node "id x y demand ready due service", depot first. A row with id 999
// terminates the node list. Throws MalformedRow (1-based line number) or
// EmptyInput.
RoutingInstance ParseBenchmark(std::istream& in);
RoutingInstance ParseBenchmark(std::string_view text);
std::string SerializeBenchmark(const RoutingInstance& instance);

// A small Dumas-style sample kept in the library for tests and docs.
std::string_view EmbeddedBenchmarkSample();

// {"kind", "feature_version", "rie_cap", "theta": [...], "clip"}.
nlohmann::json CheckpointToJson(const LinearPolicyParams& params);
LinearPolicyParams CheckpointFromJson(const nlohmann::json& doc);

// One solve record per instance.
struct ResultRecord {
  std::int64_t instance_id = 0;
  Route route;
  double objective = 0.0;
  bool feasible = false;
  double log_prob = 0.0;
  std::int64_t backtracks = 0;
  bool relaxed = false;
  // Solutions generated for the instance and how many were infeasible.
  std::int64_t solutions = 1;
  std::int64_t infeasible_solutions = 0;
};

nlohmann::json RecordToJson(const ResultRecord& record);
ResultRecord RecordFromJson(const nlohmann::json& doc);
void WriteRecords(std::ostream& out, std::span<const ResultRecord> records);
std::vector<ResultRecord> ReadRecords(std::istream& in);

}  // namespace lazymask

#endif  // LAZYMASK_IO_HPP_
