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

#ifndef LAZYMASK_INSTANCE_HPP_
#define LAZYMASK_INSTANCE_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "lazymask/rng.hpp"

namespace lazymask {

enum class ProblemKind { kTsptw, kTspdl };

std::string_view ToString(ProblemKind kind);
ProblemKind ParseProblemKind(std::string_view text);

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct TimeWindow {
  double ready = 0.0;
  double due = 0.0;
  bool operator==(const TimeWindow&) const = default;
};

// Due time that no reachable service-start time can exceed. Used for the
// depot of synthetic instances.
inline constexpr double kUnboundedDue = std::numeric_limits<double>::infinity();

// A TSPTW or TSPDL instance over nodes 0..n, node 0 being the depot.
//
// Immutable once built. The factories validate the per-kind invariants and
// precompute the dense Euclidean distance matrix.
class RoutingInstance {
 public:
  static RoutingInstance Tsptw(std::vector<Point> coords, std::vector<TimeWindow> windows,
                               std::vector<double> service_times);
  static RoutingInstance Tspdl(std::vector<Point> coords, std::vector<double> demands,
                               std::vector<double> draft_limits);

  ProblemKind kind() const { return kind_; }
  // n + 1, including the depot.
  int num_nodes() const { return static_cast<int>(coords_.size()); }
  int num_customers() const { return num_nodes() - 1; }
  // Route length T = n + 1.
  int horizon() const { return num_nodes(); }

  std::span<const Point> coords() const { return coords_; }
  std::span<const TimeWindow> windows() const { return windows_; }
  std::span<const double> service_times() const { return service_; }
  std::span<const double> demands() const { return demands_; }
  std::span<const double> draft_limits() const { return drafts_; }

  double distance(int i, int j) const { return dist_[static_cast<std::size_t>(i) * coords_.size() + j]; }
  // Service time at `from` plus travel time to `to`.
  double duration(int from, int to) const { return service_[from] + distance(from, to); }
  double total_demand() const;

  // Compares the defining fields; the cached distance matrix is derived.
  bool operator==(const RoutingInstance& other) const;

 private:
  RoutingInstance() = default;
  void BuildDistances();

  ProblemKind kind_ = ProblemKind::kTsptw;
  std::vector<Point> coords_;
  std::vector<TimeWindow> windows_;
  std::vector<double> service_;
  std::vector<double> demands_;
  std::vector<double> drafts_;
  std::vector<double> dist_;
};

double Euclidean(const Point& a, const Point& b);

enum class Hardness { kEasy, kMedium, kHard };

std::string_view ToString(Hardness level);
Hardness ParseHardness(std::string_view text);

// Generator parameters for one TSPTW hardness level.
struct TsptwLevel {
  Hardness level = Hardness::kMedium;
  // Window widths are drawn from U[alpha, beta] * horizon (easy/medium).
  double alpha = 0.1;
  double beta = 0.2;
  // Expected tour length T_n = horizon_per_node * (n + 1) (easy/medium).
  double horizon_per_node = 55.0;
  // Maximum window width around tour arrival times (hard).
  double max_width = 100.0;

  static TsptwLevel For(Hardness level);
  // Side of the square the raw coordinates are drawn from.
  double coord_range() const { return level == Hardness::kHard ? 50.0 : 100.0; }
};

// Default TSPDL restricted-node percentage for a hardness level (75 medium,
// 90 hard).
double TspdlSigmaFor(Hardness level);

inline constexpr int kTspdlMaxAttempts = 10000;

// Normalized random TSPTW instance with zero service times.
RoutingInstance GenerateTsptw(int n, const TsptwLevel& level, RandomStream& rng);
inline RoutingInstance GenerateTsptw(int n, Hardness level, RandomStream& rng) {
  return GenerateTsptw(n, TsptwLevel::For(level), rng);
}

// One TSPDL candidate drawn without the feasibility filter.
RoutingInstance SampleTspdlCandidate(int n, double sigma_pct, RandomStream& rng);

// Rejection-samples candidates until one admits a feasible route. Throws
// GenerationExhausted after `max_attempts` rejections.
RoutingInstance GenerateTspdl(int n, double sigma_pct, RandomStream& rng,
                              int max_attempts = kTspdlMaxAttempts);

// Divides coordinates, time windows, and service times by `range`.
RoutingInstance Normalize(const RoutingInstance& instance, double range);

// The eight symmetries of the unit square, identity first.
std::array<RoutingInstance, 8> DihedralAugment(const RoutingInstance& instance);
Point DihedralTransform(int variant, const Point& p);

}  // namespace lazymask

#endif  // LAZYMASK_INSTANCE_HPP_
