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

#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lazymask/cli.hpp"
#include "lazymask/constraints.hpp"
#include "lazymask/decoder.hpp"
#include "lazymask/errors.hpp"
#include "lazymask/io.hpp"
#include "lazymask/oracle.hpp"

namespace py = pybind11;

namespace lazymask {
namespace {

std::unique_ptr<Policy> MakeHeuristic(const std::string& name) {
  if (name == "uniform") return std::make_unique<UniformPolicy>();
  if (name == "random-l") return std::make_unique<RandomLPolicy>();
  if (name == "random-c") return std::make_unique<RandomCPolicy>();
  throw py::value_error("unknown policy: " + name);
}

BacktrackBudget ToBudget(std::optional<std::int64_t> budget) {
  if (!budget) return BacktrackBudget::Unlimited();
  if (*budget < 0) throw py::value_error("budget must be non-negative");
  return BacktrackBudget(*budget);
}

py::dict ResultToDict(const DecodeResult& r) {
  py::dict d;
  d["route"] = r.route;
  d["feasible"] = r.feasible;
  d["objective"] = r.objective;
  d["log_prob"] = r.log_prob;
  d["backtracks"] = r.backtracks_used;
  d["relaxed"] = r.relaxed;
  return d;
}

RoutingInstance Generate(const std::string& problem, int n, const std::string& hardness, std::uint64_t seed,
                         std::uint64_t index) {
  RandomStream rng(seed, index);
  const Hardness level = ParseHardness(hardness);
  if (ParseProblemKind(problem) == ProblemKind::kTsptw) return GenerateTsptw(n, level, rng);
  return GenerateTspdl(n, TspdlSigmaFor(level), rng);
}

}  // namespace
}  // namespace lazymask

PYBIND11_MODULE(_lazymask, m) {
  using namespace lazymask;
  m.doc() = "Routing decoders with lazily refined feasibility masks.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DataError>(m, "DataError", error.ptr());
  py::register_exception<InfeasibleInstance>(m, "InfeasibleInstance", error.ptr());
  py::register_exception<NoFeasibleRoute>(m, "NoFeasibleRoute", error.ptr());

  py::class_<RoutingInstance>(m, "Instance")
      .def_static("from_json", &DeserializeInstance, py::arg("text"))
      .def_static("from_benchmark", py::overload_cast<std::string_view>(&ParseBenchmark), py::arg("text"))
      .def_static(
          "tsptw",
          [](const std::vector<std::pair<double, double>>& coords,
             const std::vector<std::pair<double, double>>& windows, std::optional<std::vector<double>> service) {
            std::vector<Point> pts;
            for (auto [x, y] : coords) pts.push_back({x, y});
            std::vector<TimeWindow> tw;
            for (auto [a, b] : windows) tw.push_back({a, b});
            return RoutingInstance::Tsptw(std::move(pts), std::move(tw),
                                          service.value_or(std::vector<double>(coords.size(), 0.0)));
          },
          py::arg("coords"), py::arg("windows"), py::arg("service_times") = py::none())
      .def_static(
          "tspdl",
          [](const std::vector<std::pair<double, double>>& coords, std::vector<double> demands,
             std::vector<double> drafts) {
            std::vector<Point> pts;
            for (auto [x, y] : coords) pts.push_back({x, y});
            return RoutingInstance::Tspdl(std::move(pts), std::move(demands), std::move(drafts));
          },
          py::arg("coords"), py::arg("demands"), py::arg("draft_limits"))
      .def("to_json", &SerializeInstance)
      .def_property_readonly("kind", [](const RoutingInstance& i) { return std::string(ToString(i.kind())); })
      .def_property_readonly("num_nodes", &RoutingInstance::num_nodes)
      .def("distance", &RoutingInstance::distance, py::arg("i"), py::arg("j"))
      .def("__eq__", &RoutingInstance::operator==)
      .def("__repr__", [](const RoutingInstance& i) {
        return "<Instance " + std::string(ToString(i.kind())) + " nodes=" + std::to_string(i.num_nodes()) + ">";
      });

  m.def("generate", &Generate, py::arg("problem"), py::arg("n"), py::arg("hardness") = "medium",
        py::arg("seed") = 0, py::arg("index") = 0,
        "Instance `index` of the stream seeded by `seed`; matches `lazymask generate`.");

  m.def("objective", [](const RoutingInstance& inst, const Route& r) { return Objective(inst, r); });
  m.def("is_feasible", [](const RoutingInstance& inst, const Route& r) { return CheckFeasible(inst, r).feasible; });
  m.def("total_violation", [](const RoutingInstance& inst, const Route& r) { return TotalViolation(inst, r); });
  m.def(
      "penalty", [](const RoutingInstance& inst, const Route& r, double rho) { return Penalty(inst, r, rho); },
      py::arg("instance"), py::arg("route"), py::arg("rho"));

  m.def(
      "decode",
      [](const RoutingInstance& inst, const std::string& policy, std::optional<std::int64_t> budget,
         const std::string& init, const std::string& mode, std::uint64_t seed, std::optional<int> first_node) {
        DecodeOptions opts;
        opts.budget = ToBudget(budget);
        opts.init = ParseInitStrategy(init);
        opts.mode = ParseDecodeMode(mode);
        opts.first_node = first_node;
        const auto p = MakeHeuristic(policy);
        RandomStream rng(seed);
        DecodeResult r;
        {
          py::gil_scoped_release release;
          r = Decode(inst, *p, opts, rng);
        }
        return ResultToDict(r);
      },
      py::arg("instance"), py::arg("policy") = "uniform", py::arg("budget") = py::none(), py::arg("init") = "tsl",
      py::arg("mode") = "greedy", py::arg("seed") = 0, py::arg("first_node") = py::none(),
      "Decodes one route. `budget=None` means unlimited backtracking.");

  m.def(
      "enumerate_support",
      [](const RoutingInstance& inst, const std::string& init) {
        const auto support = EnumerateSupport(inst, ParseInitStrategy(init));
        return std::vector<Route>(support.begin(), support.end());
      },
      py::arg("instance"), py::arg("init") = "tsl");

  m.def(
      "feasible_set",
      [](const RoutingInstance& inst) {
        const FeasibleSetOracle o = Enumerate(inst);
        py::dict d;
        d["routes"] = o.routes;
        d["objectives"] = o.objectives;
        d["f_star"] = o.f_star;
        d["optimal"] = o.optimal;
        d["delta"] = o.delta;
        return d;
      },
      py::arg("instance"), "Exhaustive feasible set of a small instance (at most 10 customers).");

  m.def(
      "bound_check",
      [](const RoutingInstance& inst, double lambda, double epsilon) {
        const BoundCheck c = TheoremBoundCheck(Enumerate(inst), lambda, epsilon);
        py::dict d;
        d["lhs"] = c.lhs;
        d["rhs"] = c.rhs;
        d["holds"] = c.holds;
        return d;
      },
      py::arg("instance"), py::arg("lam"), py::arg("epsilon"));

  m.def(
      "gibbs",
      [](const RoutingInstance& inst, double lambda) { return Gibbs(Enumerate(inst), lambda).probabilities; },
      py::arg("instance"), py::arg("lam"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code;
        {
          py::gil_scoped_release release;
          code = RunCli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI subcommand; returns (exit_code, stdout, stderr).");
}
