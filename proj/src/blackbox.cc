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

#include "dcbb/blackbox.h"

#include <algorithm>
#include <limits>

#include "dcbb/errors.h"

namespace dcbb {

Algorithm::Algorithm(std::shared_ptr<const Environment> environment,
                     AllocationRule rule, std::string name)
    : environment_(std::move(environment)),
      rule_(std::move(rule)),
      name_(std::move(name)) {
  if (!environment_) throw ParameterError("algorithm needs an environment");
  if (!rule_) throw ParameterError("algorithm needs a rule");
}

Allocation Algorithm::operator()(const ValuationVector& v) const {
  if (!environment_ || !rule_) throw ParameterError("empty algorithm");
  if (v.size() != environment_->n) {
    throw DimensionError("algorithm '" + name_ + "' expects " +
                         std::to_string(environment_->n) + " agents, got " +
                         std::to_string(v.size()));
  }
  return rule_(v);
}

std::size_t HammingDistance(const ValuationVector& u, const ValuationVector& v) {
  if (u.size() != v.size()) {
    throw DimensionError("hamming distance: length " + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()));
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += u[i] != v[i];
  return d;
}

std::uint64_t PolynomialBudget(std::uint64_t c, unsigned degree, std::size_t n) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t out = c;
  for (unsigned i = 0; i < degree; ++i) {
    if (n != 0 && out > kMax / n) return kMax;
    out *= n;
  }
  return out;
}

InstrumentedBlackBox::InstrumentedBlackBox(Algorithm algorithm,
                                           BlackBoxOptions options)
    : algorithm_(std::move(algorithm)), options_(std::move(options)) {}

Allocation InstrumentedBlackBox::Query(const ValuationVector& v) {
  if (options_.budget && log_.size() >= *options_.budget) {
    throw BudgetExceeded("query budget of " + std::to_string(*options_.budget) +
                         " exhausted");
  }
  if (options_.hamming_center && options_.hamming_radius) {
    const std::size_t d = HammingDistance(v, *options_.hamming_center);
    if (d >= *options_.hamming_radius) {
      throw RestrictionViolation(
          "query " + v.ToString() + " is at distance " + std::to_string(d) +
          " from " + options_.hamming_center->ToString() + ", limit is < " +
          std::to_string(*options_.hamming_radius));
    }
  }
  Allocation out = algorithm_(v);
  if (options_.check_outputs &&
      !IsFeasible(out, algorithm_.environment().feasibility)) {
    throw InfeasibleOutput("algorithm '" + algorithm_.name() + "' returned " +
                           out.ToString() + " at " + v.ToString());
  }
  log_.push_back({v, out});
  return out;
}

std::size_t InstrumentedBlackBox::MaxDistanceFrom(
    const ValuationVector& center) const {
  std::size_t d = 0;
  for (const auto& q : log_) d = std::max(d, HammingDistance(q.input, center));
  return d;
}

bool FeasibilityOracle::Query(const Allocation& x) {
  if (budget_ && count_ >= *budget_) {
    throw BudgetExceeded("feasibility query budget of " +
                         std::to_string(*budget_) + " exhausted");
  }
  const bool member = IsFeasible(x, feasibility_);
  ++count_;
  return member;
}

}  // namespace dcbb
