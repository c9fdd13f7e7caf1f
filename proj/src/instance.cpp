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

#include "lazymask/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lazymask/constraints.hpp"
#include "lazymask/errors.hpp"

namespace lazymask {

std::string_view ToString(ProblemKind kind) {
  return kind == ProblemKind::kTsptw ? "tsptw" : "tspdl";
}

ProblemKind ParseProblemKind(std::string_view text) {
  if (text == "tsptw") return ProblemKind::kTsptw;
  if (text == "tspdl") return ProblemKind::kTspdl;
  throw DataError("unknown problem kind '" + std::string(text) + "'");
}

std::string_view ToString(Hardness level) {
  switch (level) {
    case Hardness::kEasy:
      return "easy";
    case Hardness::kMedium:
      return "medium";
    case Hardness::kHard:
      return "hard";
  }
  return "medium";
}

Hardness ParseHardness(std::string_view text) {
  if (text == "easy") return Hardness::kEasy;
  if (text == "medium") return Hardness::kMedium;
  if (text == "hard") return Hardness::kHard;
  throw DataError("unknown hardness '" + std::string(text) + "'");
}

double Euclidean(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

RoutingInstance RoutingInstance::Tsptw(std::vector<Point> coords, std::vector<TimeWindow> windows,
                                       std::vector<double> service_times) {
  if (coords.size() < 2) throw InvalidInstance("instance needs a depot and at least one customer");
  if (windows.size() != coords.size() || service_times.size() != coords.size()) {
    throw InvalidInstance("time window and service arrays must match the node count");
  }
  if (windows[0].ready != 0.0) throw InvalidInstance("depot ready time must be 0");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i].x) || !std::isfinite(coords[i].y)) {
      throw InvalidInstance("non-finite coordinate at node " + std::to_string(i));
    }
    if (std::isnan(windows[i].ready) || std::isnan(windows[i].due) || !std::isfinite(windows[i].ready) ||
        windows[i].ready > windows[i].due) {
      throw InvalidInstance("invalid time window at node " + std::to_string(i));
    }
    if (!(service_times[i] >= 0.0) || !std::isfinite(service_times[i])) {
      throw InvalidInstance("invalid service time at node " + std::to_string(i));
    }
  }
  RoutingInstance inst;
  inst.kind_ = ProblemKind::kTsptw;
  inst.coords_ = std::move(coords);
  inst.windows_ = std::move(windows);
  inst.service_ = std::move(service_times);
  inst.BuildDistances();
  return inst;
}

RoutingInstance RoutingInstance::Tspdl(std::vector<Point> coords, std::vector<double> demands,
                                       std::vector<double> draft_limits) {
  if (coords.size() < 2) throw InvalidInstance("instance needs a depot and at least one port");
  if (demands.size() != coords.size() || draft_limits.size() != coords.size()) {
    throw InvalidInstance("demand and draft arrays must match the node count");
  }
  if (demands[0] != 0.0) throw InvalidInstance("depot demand must be 0");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i].x) || !std::isfinite(coords[i].y)) {
      throw InvalidInstance("non-finite coordinate at node " + std::to_string(i));
    }
    if (!(demands[i] >= 0.0) || !std::isfinite(demands[i])) {
      throw InvalidInstance("invalid demand at node " + std::to_string(i));
    }
    if (std::isnan(draft_limits[i])) throw InvalidInstance("invalid draft limit at node " + std::to_string(i));
  }
  RoutingInstance inst;
  inst.kind_ = ProblemKind::kTspdl;
  inst.coords_ = std::move(coords);
  inst.demands_ = std::move(demands);
  inst.drafts_ = std::move(draft_limits);
  // Service times are identically zero for TSPDL; durations are pure travel.
  inst.service_.assign(inst.coords_.size(), 0.0);
  inst.BuildDistances();
  return inst;
}

void RoutingInstance::BuildDistances() {
  const std::size_t n = coords_.size();
  dist_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = Euclidean(coords_[i], coords_[j]);
      dist_[i * n + j] = d;
      dist_[j * n + i] = d;
    }
  }
}

double RoutingInstance::total_demand() const { return std::accumulate(demands_.begin(), demands_.end(), 0.0); }

bool RoutingInstance::operator==(const RoutingInstance& other) const {
  if (kind_ != other.kind_ || coords_ != other.coords_) return false;
  if (kind_ == ProblemKind::kTsptw) return windows_ == other.windows_ && service_ == other.service_;
  return demands_ == other.demands_ && drafts_ == other.drafts_;
}

TsptwLevel TsptwLevel::For(Hardness level) {
  TsptwLevel out;
  out.level = level;
  switch (level) {
    case Hardness::kEasy:
      out.alpha = 0.5;
      out.beta = 0.75;
      break;
    case Hardness::kMedium:
      out.alpha = 0.1;
      out.beta = 0.2;
      break;
    case Hardness::kHard:
      break;
  }
  return out;
}

double TspdlSigmaFor(Hardness level) { return level == Hardness::kHard ? 90.0 : 75.0; }

namespace {

std::vector<Point> UniformCoords(int count, double range, RandomStream& rng) {
  std::vector<Point> coords(count);
  for (Point& p : coords) {
    p.x = rng.Uniform(0.0, range);
    p.y = rng.Uniform(0.0, range);
  }
  return coords;
}

}  // namespace

RoutingInstance GenerateTsptw(int n, const TsptwLevel& level, RandomStream& rng) {
  if (n < 1) throw Error("generate_tsptw requires n >= 1");
  const int nodes = n + 1;
  const double range = level.coord_range();
  std::vector<Point> coords = UniformCoords(nodes, range, rng);
  std::vector<TimeWindow> windows(nodes);

  if (level.level == Hardness::kHard) {
    // Windows are centered on the arrival times of a random tour that starts
    // at the depot, so that tour is feasible by construction.
    std::vector<int> tour(nodes);
    std::iota(tour.begin(), tour.end(), 0);
    rng.Shuffle(std::span<int>(tour).subspan(1));
    double cumulative = 0.0;
    for (int t = 1; t < nodes; ++t) {
      cumulative += Euclidean(coords[tour[t - 1]], coords[tour[t]]);
      const int node = tour[t];
      const double ready = cumulative - rng.Uniform(0.0, level.max_width / 2.0);
      const double due = cumulative + rng.Uniform(0.0, level.max_width / 2.0);
      windows[node] = {std::max(ready, 0.0), due};
    }
  } else {
    const double horizon = level.horizon_per_node * nodes;
    for (int i = 1; i < nodes; ++i) {
      const double ready = rng.Uniform(0.0, horizon);
      const double width = rng.Uniform(level.alpha, level.beta) * horizon;
      windows[i] = {ready, ready + width};
    }
  }
  windows[0] = {0.0, kUnboundedDue};

  RoutingInstance raw = RoutingInstance::Tsptw(std::move(coords), std::move(windows), std::vector<double>(nodes, 0.0));
  return Normalize(raw, range);
}

RoutingInstance SampleTspdlCandidate(int n, double sigma_pct, RandomStream& rng) {
  if (n < 1) throw Error("generate_tspdl requires n >= 1");
  if (!(sigma_pct > 0.0 && sigma_pct <= 100.0)) throw Error("sigma must lie in (0, 100]");
  const int nodes = n + 1;
  std::vector<Point> coords = UniformCoords(nodes, 1.0, rng);
  std::vector<double> demands(nodes, 1.0);
  demands[0] = 0.0;
  const double total = static_cast<double>(n);
  std::vector<double> drafts(nodes, total);

  const int restricted = static_cast<int>(std::floor(nodes * sigma_pct / 100.0));
  std::vector<int> order(nodes);
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<int>(order));
  // Limits are drawn from {1, ..., n-1}; for n = 1 that range is empty and
  // collapses to {1}.
  const int upper = std::max(1, n - 1);
  for (int k = 0; k < restricted; ++k) {
    drafts[order[k]] = static_cast<double>(rng.UniformInt(1, upper));
  }
  return RoutingInstance::Tspdl(std::move(coords), std::move(demands), std::move(drafts));
}

RoutingInstance GenerateTspdl(int n, double sigma_pct, RandomStream& rng, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    RoutingInstance candidate = SampleTspdlCandidate(n, sigma_pct, rng);
    if (TspdlInstanceFeasible(candidate)) return candidate;
  }
  throw GenerationExhausted("no feasible TSPDL instance after " + std::to_string(max_attempts) + " attempts");
}

RoutingInstance Normalize(const RoutingInstance& instance, double range) {
  if (!(range > 0.0)) throw Error("normalization range must be positive");
  std::vector<Point> coords(instance.coords().begin(), instance.coords().end());
  for (Point& p : coords) {
    p.x /= range;
    p.y /= range;
  }
  if (instance.kind() == ProblemKind::kTspdl) {
    return RoutingInstance::Tspdl(std::move(coords), {instance.demands().begin(), instance.demands().end()},
                                  {instance.draft_limits().begin(), instance.draft_limits().end()});
  }
  std::vector<TimeWindow> windows(instance.windows().begin(), instance.windows().end());
  for (TimeWindow& w : windows) {
    w.ready /= range;
    w.due /= range;
  }
  std::vector<double> service(instance.service_times().begin(), instance.service_times().end());
  for (double& s : service) s /= range;
  return RoutingInstance::Tsptw(std::move(coords), std::move(windows), std::move(service));
}

Point DihedralTransform(int variant, const Point& p) {
  switch (variant) {
    case 0:
      return {p.x, p.y};
    case 1:
      return {p.y, p.x};
    case 2:
      return {1.0 - p.x, p.y};
    case 3:
      return {p.x, 1.0 - p.y};
    case 4:
      return {1.0 - p.x, 1.0 - p.y};
    case 5:
      return {p.y, 1.0 - p.x};
    case 6:
      return {1.0 - p.y, p.x};
    case 7:
      return {1.0 - p.y, 1.0 - p.x};
    default:
      throw Error("dihedral variant must be in [0, 8)");
  }
}

std::array<RoutingInstance, 8> DihedralAugment(const RoutingInstance& instance) {
  auto make = [&](int variant) {
    std::vector<Point> coords;
    coords.reserve(instance.num_nodes());
    for (const Point& p : instance.coords()) coords.push_back(DihedralTransform(variant, p));
    if (instance.kind() == ProblemKind::kTspdl) {
      return RoutingInstance::Tspdl(std::move(coords), {instance.demands().begin(), instance.demands().end()},
                                    {instance.draft_limits().begin(), instance.draft_limits().end()});
    }
    return RoutingInstance::Tsptw(std::move(coords), {instance.windows().begin(), instance.windows().end()},
                                  {instance.service_times().begin(), instance.service_times().end()});
  };
  return {make(0), make(1), make(2), make(3), make(4), make(5), make(6), make(7)};
}

}  // namespace lazymask
