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

#include "lazymask/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lazymask/errors.hpp"

namespace lazymask {

using nlohmann::json;

namespace {

const json& Require(const json& doc, const char* key) {
  if (!doc.is_object()) throw SchemaViolation("", "document is not an object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw SchemaViolation(std::string("/") + key, "missing key");
  return *it;
}

double NumberAt(const json& value, const std::string& path) {
  if (!value.is_number()) throw SchemaViolation(path, "expected a number");
  return value.get<double>();
}

std::vector<double> NumberArray(const json& doc, const char* key, std::size_t expected) {
  const json& arr = Require(doc, key);
  const std::string base = std::string("/") + key;
  if (!arr.is_array()) throw SchemaViolation(base, "expected an array");
  if (arr.size() != expected) throw SchemaViolation(base, "expected " + std::to_string(expected) + " entries");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(NumberAt(arr[i], base + "/" + std::to_string(i)));
  return out;
}

json Due(double due) { return std::isinf(due) ? json(nullptr) : json(due); }

}  // namespace

json InstanceToJson(const RoutingInstance& instance) {
  json doc;
  doc["kind"] = std::string(ToString(instance.kind()));
  json coords = json::array();
  for (const Point& p : instance.coords()) coords.push_back({p.x, p.y});
  doc["coords"] = std::move(coords);
  if (instance.kind() == ProblemKind::kTsptw) {
    json tw = json::array();
    for (const TimeWindow& w : instance.windows()) tw.push_back({w.ready, Due(w.due)});
    doc["tw"] = std::move(tw);
    doc["service"] = std::vector<double>(instance.service_times().begin(), instance.service_times().end());
  } else {
    doc["demand"] = std::vector<double>(instance.demands().begin(), instance.demands().end());
    doc["draft"] = std::vector<double>(instance.draft_limits().begin(), instance.draft_limits().end());
  }
  return doc;
}

RoutingInstance InstanceFromJson(const json& doc) {
  const json& kind_value = Require(doc, "kind");
  if (!kind_value.is_string()) throw SchemaViolation("/kind", "expected a string");
  const std::string kind_text = kind_value.get<std::string>();
  if (kind_text != "tsptw" && kind_text != "tspdl") throw SchemaViolation("/kind", "unknown kind '" + kind_text + "'");

  const json& coords_value = Require(doc, "coords");
  if (!coords_value.is_array()) throw SchemaViolation("/coords", "expected an array");
  std::vector<Point> coords;
  for (std::size_t i = 0; i < coords_value.size(); ++i) {
    const std::string path = "/coords/" + std::to_string(i);
    const json& pair = coords_value[i];
    if (!pair.is_array() || pair.size() != 2) throw SchemaViolation(path, "expected [x, y]");
    coords.push_back({NumberAt(pair[0], path + "/0"), NumberAt(pair[1], path + "/1")});
  }
  const std::size_t nodes = coords.size();

  try {
    if (kind_text == "tsptw") {
      const json& tw_value = Require(doc, "tw");
      if (!tw_value.is_array() || tw_value.size() != nodes) throw SchemaViolation("/tw", "expected one window per node");
      std::vector<TimeWindow> windows;
      for (std::size_t i = 0; i < nodes; ++i) {
        const std::string path = "/tw/" + std::to_string(i);
        const json& pair = tw_value[i];
        if (!pair.is_array() || pair.size() != 2) throw SchemaViolation(path, "expected [ready, due]");
        const double ready = NumberAt(pair[0], path + "/0");
        const double due = pair[1].is_null() ? kUnboundedDue : NumberAt(pair[1], path + "/1");
        windows.push_back({ready, due});
      }
      std::vector<double> service =
          doc.contains("service") ? NumberArray(doc, "service", nodes) : std::vector<double>(nodes, 0.0);
      return RoutingInstance::Tsptw(std::move(coords), std::move(windows), std::move(service));
    }
    return RoutingInstance::Tspdl(std::move(coords), NumberArray(doc, "demand", nodes), NumberArray(doc, "draft", nodes));
  } catch (const InvalidInstance& e) {
    throw SchemaViolation("", e.what());
  }
}

std::string SerializeInstance(const RoutingInstance& instance) { return InstanceToJson(instance).dump(); }

RoutingInstance DeserializeInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaViolation("", e.what());
  }
  return InstanceFromJson(doc);
}

void WriteDataset(std::ostream& out, std::span<const RoutingInstance> instances) {
  for (const RoutingInstance& inst : instances) out << SerializeInstance(inst) << '\n';
}

std::vector<RoutingInstance> ReadDataset(std::istream& in) {
  std::vector<RoutingInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(DeserializeInstance(line));
    } catch (const SchemaViolation& e) {
      throw SchemaViolation("line " + std::to_string(line_no) + e.path(), e.what());
    }
  }
  return out;
}

namespace {

bool ParseDouble(const std::string& token, double& value) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> Tokens(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

constexpr std::size_t kBenchmarkColumns = 7;
constexpr double kTerminatorId = 999.0;

}  // namespace

RoutingInstance ParseBenchmark(std::istream& in) {
  std::vector<Point> coords;
  std::vector<TimeWindow> windows;
  std::vector<double> service;
  std::string line;
  std::size_t line_no = 0;
  bool in_rows = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> tokens = Tokens(line);
    if (tokens.empty()) continue;
    std::vector<double> values(tokens.size());
    bool numeric = true;
    for (std::size_t i = 0; i < tokens.size(); ++i) numeric = numeric && ParseDouble(tokens[i], values[i]);
    if (!in_rows && !numeric) continue;  // header
    in_rows = true;
    if (!numeric) throw MalformedRow(line_no, "non-numeric field");
    if (tokens.size() != kBenchmarkColumns) {
      throw MalformedRow(line_no, "expected " + std::to_string(kBenchmarkColumns) + " columns, got " +
                                      std::to_string(tokens.size()));
    }
    if (values[0] == kTerminatorId) break;
    coords.push_back({values[1], values[2]});
    windows.push_back({values[4], values[5]});
    service.push_back(values[6]);
  }
  if (coords.empty()) throw EmptyInput();
  return RoutingInstance::Tsptw(std::move(coords), std::move(windows), std::move(service));
}

RoutingInstance ParseBenchmark(std::string_view text) {
  std::istringstream stream{std::string(text)};
  return ParseBenchmark(stream);
}

std::string SerializeBenchmark(const RoutingInstance& instance) {
  if (instance.kind() != ProblemKind::kTsptw) throw WrongProblemKind("benchmark text holds TSPTW instances only");
  std::string out = "CUST NO.  XCOORD.  YCOORD.  DEMAND  READY TIME  DUE DATE  SERVICE TIME\n";
  char buf[256];
  for (int i = 0; i < instance.num_nodes(); ++i) {
    const Point& p = instance.coords()[i];
    const TimeWindow& w = instance.windows()[i];
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g 0 %.17g %.17g %.17g\n", i + 1, p.x, p.y, w.ready, w.due,
                  instance.service_times()[i]);
    out += buf;
  }
  out += "999 0 0 0 0 0 0\n";
  return out;
}

std::string_view EmbeddedBenchmarkSample() {
  return R"(CUST NO.  XCOORD.  YCOORD.  DEMAND  READY TIME  DUE DATE  SERVICE TIME

    1      16.00      23.00       0.00       0.00     408.00       0.00
    2      22.00       4.00       0.00      62.00      68.00       0.00
    3      12.00       6.00       0.00     181.00     205.00       0.00
    4      47.00      38.00       0.00     306.00     324.00       0.00
    5      11.00      29.00       0.00     214.00     217.00       0.00
    6      25.00       5.00       0.00      51.00      61.00       0.00
  999       0.00       0.00       0.00       0.00       0.00       0.00
)";
}

json CheckpointToJson(const LinearPolicyParams& params) {
  return {{"kind", std::string(ToString(params.kind))},
          {"feature_version", params.feature_version},
          {"rie_cap", params.rie_cap},
          {"theta", params.theta},
          {"clip", params.clip}};
}

LinearPolicyParams CheckpointFromJson(const json& doc) {
  LinearPolicyParams params;
  const json& kind = Require(doc, "kind");
  if (!kind.is_string() || (kind != "tsptw" && kind != "tspdl")) throw SchemaViolation("/kind", "unknown kind");
  params.kind = ParseProblemKind(kind.get<std::string>());
  const json& version = Require(doc, "feature_version");
  if (!version.is_number_integer()) throw SchemaViolation("/feature_version", "expected an integer");
  params.feature_version = version.get<int>();
  if (params.feature_version != kFeatureVersion) {
    throw SchemaViolation("/feature_version", "unsupported feature version " + std::to_string(params.feature_version));
  }
  if (doc.contains("rie_cap")) {
    if (!doc["rie_cap"].is_number_integer() || doc["rie_cap"].get<int>() < 1) {
      throw SchemaViolation("/rie_cap", "expected a positive integer");
    }
    params.rie_cap = doc["rie_cap"].get<int>();
  }
  params.theta = NumberArray(doc, "theta", static_cast<std::size_t>(FeatureDimension(params.kind, params.rie_cap)));
  params.clip = NumberAt(Require(doc, "clip"), "/clip");
  if (!(params.clip > 0.0)) throw SchemaViolation("/clip", "clip must be positive");
  return params;
}

json RecordToJson(const ResultRecord& record) {
  return {{"instance_id", record.instance_id},
          {"route", record.route},
          {"objective", record.objective},
          {"feasible", record.feasible},
          {"log_prob", record.log_prob},
          {"backtracks", record.backtracks},
          {"relaxed", record.relaxed},
          {"solutions", record.solutions},
          {"infeasible_solutions", record.infeasible_solutions}};
}

ResultRecord RecordFromJson(const json& doc) {
  ResultRecord r;
  try {
    r.instance_id = Require(doc, "instance_id").get<std::int64_t>();
    r.route = Require(doc, "route").get<Route>();
    r.objective = Require(doc, "objective").get<double>();
    r.feasible = Require(doc, "feasible").get<bool>();
    r.log_prob = doc.value("log_prob", 0.0);
    r.backtracks = doc.value("backtracks", std::int64_t{0});
    r.relaxed = doc.value("relaxed", false);
    r.solutions = doc.value("solutions", std::int64_t{1});
    r.infeasible_solutions = doc.value("infeasible_solutions", std::int64_t{r.feasible ? 0 : 1});
  } catch (const json::type_error& e) {
    throw SchemaViolation("", e.what());
  }
  return r;
}

void WriteRecords(std::ostream& out, std::span<const ResultRecord> records) {
  for (const ResultRecord& r : records) out << RecordToJson(r).dump() << '\n';
}

std::vector<ResultRecord> ReadRecords(std::istream& in) {
  std::vector<ResultRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaViolation("line " + std::to_string(line_no), e.what());
    }
    out.push_back(RecordFromJson(doc));
  }
  return out;
}

}  // namespace lazymask
