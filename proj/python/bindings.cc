// Copyright 2026 The dcbb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Rationals cross the boundary as "p/q" strings and
// valuations/allocations as digit strings; the Python package converts
// rationals to fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dcbb/adversaries.h"
#include "dcbb/blackbox.h"
#include "dcbb/document.h"
#include "dcbb/errors.h"
#include "dcbb/harness.h"
#include "dcbb/model.h"
#include "dcbb/serialize.h"
#include "dcbb/transforms.h"
#include "dcbb/verify.h"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

std::vector<std::string> LadderStrings(const dcbb::ValueLadder& ladder) {
  std::vector<std::string> out;
  for (const auto& v : ladder.values()) out.push_back(dcbb::FormatRational(v));
  return out;
}

dcbb::ValueLadder LadderFrom(const std::vector<std::string>& values) {
  std::vector<dcbb::Rational> parsed;
  for (const auto& v : values) parsed.push_back(dcbb::ParseRational(v));
  return dcbb::ValueLadder(std::move(parsed));
}

dcbb::ValuationVector InputFor(const dcbb::Environment& env, const std::string& text) {
  dcbb::ValuationVector v = dcbb::ValuationVector::FromString(text, env.ladder.size());
  if (v.size() != env.n) throw dcbb::DimensionError("input length does not match n");
  return v;
}

// An environment plus an algorithm over it, as seen from Python.
struct PyInstance {
  dcbb::GeneratedInstance instance;

  const dcbb::Environment& env() const { return *instance.environment; }

  dcbb::AllocationRule Rule(const std::optional<std::string>& transformation) const {
    if (!transformation || *transformation == "none") return instance.algorithm;
    return dcbb::BindTransform(dcbb::ParseTransformKind(*transformation),
                               instance.algorithm);
  }
};

dcbb::VerifyOptions Options(std::uint64_t bound, std::uint64_t seed, unsigned workers) {
  dcbb::VerifyOptions options;
  options.enumeration_bound = bound;
  options.seed = seed;
  options.workers = workers;
  return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact verification of black-box transformations for monotone allocation rules";

  auto error = py::register_exception<dcbb::Error>(m, "Error");
  py::register_exception<dcbb::ParseError>(m, "ParseError", error.ptr());
  py::register_exception<dcbb::ParameterError>(m, "ParameterError", error.ptr());
  py::register_exception<dcbb::DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<dcbb::BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<dcbb::RestrictionViolation>(m, "RestrictionViolation",
                                                     error.ptr());
  py::register_exception<dcbb::InfeasibleOutput>(m, "InfeasibleOutput", error.ptr());

  py::class_<dcbb::Environment, std::shared_ptr<dcbb::Environment>>(m, "Environment")
      .def(py::init([](std::size_t n, const std::vector<std::string>& ladder,
                       const std::vector<std::string>& maximal) {
             std::vector<dcbb::Allocation> allocations;
             for (const auto& x : maximal) {
               allocations.push_back(dcbb::Allocation::FromString(x));
             }
             return std::make_shared<dcbb::Environment>(
                 n, LadderFrom(ladder), dcbb::NormalizeAntichain(n, allocations));
           }),
           "n"_a, "ladder"_a, "maximal"_a)
      .def_property_readonly("n", [](const dcbb::Environment& e) { return e.n; })
      .def_property_readonly("ladder",
                             [](const dcbb::Environment& e) { return LadderStrings(e.ladder); })
      .def_property_readonly("maximal",
                             [](const dcbb::Environment& e) {
                               std::vector<std::string> out;
                               for (const auto& x : e.feasibility.maximal()) {
                                 out.push_back(x.ToString());
                               }
                               return out;
                             })
      .def("is_feasible",
           [](const dcbb::Environment& e, const std::string& x) {
             return dcbb::IsFeasible(dcbb::Allocation::FromString(x), e.feasibility);
           })
      .def("welfare",
           [](const dcbb::Environment& e, const std::string& v, const std::string& x) {
             return dcbb::FormatRational(
                 dcbb::Welfare(InputFor(e, v), dcbb::Allocation::FromString(x), e.ladder));
           })
      .def("opt_welfare", [](const dcbb::Environment& e, const std::string& v) {
        const dcbb::Optimum opt = dcbb::OptWelfare(InputFor(e, v), e.feasibility, e.ladder);
        std::optional<std::string> argmax;
        if (opt.argmax) argmax = opt.argmax->ToString();
        return py::make_tuple(dcbb::FormatRational(opt.welfare), argmax);
      });

  py::class_<PyInstance>(m, "Instance")
      .def_property_readonly("generator",
                             [](const PyInstance& p) { return p.instance.generator; })
      .def_property_readonly("environment",
                             [](const PyInstance& p) {
                               return std::make_shared<dcbb::Environment>(p.env());
                             })
      .def("__call__",
           [](const PyInstance& p, const std::string& v) {
             return p.instance.algorithm(InputFor(p.env(), v)).ToString();
           })
      .def("transform",
           [](const PyInstance& p, const std::string& transformation, const std::string& v) {
             return p.Rule(transformation)(InputFor(p.env(), v)).ToString();
           },
           "transformation"_a, "input"_a)
      .def("query_log",
           [](const PyInstance& p, const std::string& transformation, const std::string& v) {
             dcbb::InstrumentedBlackBox bb(p.instance.algorithm);
             dcbb::ApplyTransform(dcbb::ParseTransformKind(transformation), bb,
                                  InputFor(p.env(), v));
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& q : bb.log()) {
               out.emplace_back(q.input.ToString(), q.output.ToString());
             }
             return out;
           },
           "transformation"_a, "input"_a)
      .def("check_monotone",
           [](const PyInstance& p, std::optional<std::string> transformation,
              std::uint64_t bound, std::uint64_t seed, unsigned workers) {
             const auto report = dcbb::CheckMonotone(p.Rule(transformation), p.env(),
                                                     Options(bound, seed, workers));
             py::list violations;
             for (const auto& v : report.violations) {
               violations.append(py::dict("input"_a = v.input.ToString(), "agent"_a = v.agent,
                                          "low"_a = v.low, "high"_a = v.high));
             }
             return py::dict("violations"_a = violations,
                             "checked_pairs"_a = report.checked_pairs,
                             "sampled"_a = report.sampled);
           },
           "transformation"_a = py::none(), "bound"_a = 2'000'000, "seed"_a = 0,
           "workers"_a = 1)
      .def("welfare_report",
           [](const PyInstance& p, std::optional<std::string> transformation,
              std::uint64_t bound, std::uint64_t seed, unsigned workers) {
             const auto r = dcbb::ComputeWelfareReport(p.Rule(transformation),
                                                       p.instance.algorithm, p.env(),
                                                       Options(bound, seed, workers));
             return py::dict(
                 "pointwise_min_fraction"_a = dcbb::FormatRational(r.pointwise_min_fraction),
                 "full_welfare_count"_a = r.full_welfare_count,
                 "total_inputs"_a = r.total_inputs,
                 "zero_welfare_inputs"_a = r.zero_welfare_inputs,
                 "sum_welfare_rule"_a = dcbb::FormatRational(r.sum_welfare_rule),
                 "sum_welfare_original"_a = dcbb::FormatRational(r.sum_welfare_original),
                 "approx_ratio_rule"_a = dcbb::FormatRational(r.approx_ratio_rule),
                 "approx_ratio_original"_a = dcbb::FormatRational(r.approx_ratio_original),
                 "sampled"_a = r.sampled);
           },
           "transformation"_a = py::none(), "bound"_a = 2'000'000, "seed"_a = 0,
           "workers"_a = 1)
      .def("payments",
           [](const PyInstance& p, const std::string& v,
              std::optional<std::string> transformation) {
             const auto result =
                 dcbb::MyersonPayments(p.Rule(transformation), InputFor(p.env(), v),
                                       p.env().ladder);
             std::vector<std::string> payments;
             for (const auto& x : result.payments) payments.push_back(dcbb::FormatRational(x));
             return py::make_tuple(result.allocation.ToString(), payments,
                                   result.consistent);
           },
           "input"_a, "transformation"_a = py::none())
      .def("document", [](const PyInstance& p) {
        return dcbb::InstanceDocument(p.instance).Serialize();
      });

  m.def(
      "generate",
      [](const std::string& name, const std::vector<std::string>& ladder,
         std::optional<std::size_t> n, std::optional<std::uint64_t> seed,
         const std::map<std::string, std::string>& params) {
        return PyInstance{
            dcbb::InstantiateGenerator(name, params, seed, n, LadderFrom(ladder))};
      },
      "name"_a, "ladder"_a, "n"_a = py::none(), "seed"_a = py::none(),
      "params"_a = std::map<std::string, std::string>{});

  m.def(
      "load_instance",
      [](const std::string& text) {
        dcbb::LoadedInstance loaded = dcbb::LoadInstance(dcbb::Document::Parse(text));
        const std::string name = loaded.algorithm.name();
        return PyInstance{dcbb::GeneratedInstance{name, loaded.environment,
                                                  std::move(loaded.rule),
                                                  std::move(loaded.algorithm)}};
      },
      "text"_a);

  m.def(
      "run",
      [](const std::string& command, const std::string& config_text,
         const std::string& input) {
        const dcbb::ExperimentConfig config =
            dcbb::ParseConfig(dcbb::Document::Parse(config_text));
        dcbb::CommandResult result;
        if (command == "verify") {
          result = dcbb::RunVerify(config);
        } else if (command == "sweep") {
          result = dcbb::RunSweep(config);
        } else if (command == "payments") {
          result = dcbb::RunPayments(config, input);
        } else if (command == "adversary") {
          result = dcbb::RunAdversary(config);
        } else if (command == "opt") {
          result = dcbb::RunOpt(config, input);
        } else {
          throw dcbb::ParameterError("unknown command '" + command + "'");
        }
        return py::make_tuple(result.document.Serialize(), result.exit_code);
      },
      "command"_a, "config"_a, "input"_a = "");
}
