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

// Query-only access to allocation algorithms. Transformations never call an
// Algorithm directly; they go through an InstrumentedBlackBox, which logs
// every query and enforces budgets and Hamming-radius restrictions.

#ifndef DCBB_BLACKBOX_H_
#define DCBB_BLACKBOX_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dcbb/model.h"

namespace dcbb {

// Any total map from inputs to allocations.
using AllocationRule = std::function<Allocation(const ValuationVector&)>;

// A deterministic allocation algorithm bound to its environment. Immutable
// and cheap to copy; safe to share across threads.
class Algorithm {
 public:
  // A placeholder with no environment; assign before use.
  Algorithm() = default;
  Algorithm(std::shared_ptr<const Environment> environment, AllocationRule rule,
            std::string name = "custom");

  // Runs the algorithm. Throws DimensionError if v has the wrong length.
  Allocation operator()(const ValuationVector& v) const;

  const Environment& environment() const { return *environment_; }
  const std::shared_ptr<const Environment>& shared_environment() const {
    return environment_;
  }
  const std::string& name() const { return name_; }

 private:
  std::shared_ptr<const Environment> environment_;
  AllocationRule rule_;
  std::string name_;
};

std::size_t HammingDistance(const ValuationVector& u, const ValuationVector& v);

struct QueryRecord {
  ValuationVector input;
  Allocation output;
};

struct BlackBoxOptions {
  // Maximum number of queries; unlimited when unset.
  std::optional<std::uint64_t> budget;
  // When both are set, every query must lie at distance strictly less than
  // hamming_radius from hamming_center.
  std::optional<ValuationVector> hamming_center;
  std::optional<std::size_t> hamming_radius;
  // Verify that each returned allocation is feasible (debug mode).
  bool check_outputs = false;
};

// c * n^d, saturating at UINT64_MAX.
std::uint64_t PolynomialBudget(std::uint64_t c, unsigned degree, std::size_t n);

// Single-owner query wrapper around an Algorithm. Not thread-safe; parallel
// sweeps create one per worker.
class InstrumentedBlackBox {
 public:
  explicit InstrumentedBlackBox(Algorithm algorithm, BlackBoxOptions options = {});

  // Returns algorithm(v) and appends the query to the log.
  //   BudgetExceeded        if the budget is already used up,
  //   RestrictionViolation  if v is not within the Hamming radius,
  //   InfeasibleOutput      if output checking is on and the answer is
  //                         outside the feasibility set.
  Allocation Query(const ValuationVector& v);

  const std::vector<QueryRecord>& log() const { return log_; }
  std::uint64_t query_count() const { return log_.size(); }
  const BlackBoxOptions& options() const { return options_; }
  const Algorithm& algorithm() const { return algorithm_; }
  const Environment& environment() const { return algorithm_.environment(); }

  // Largest Hamming distance between `center` and any logged input; 0 for an
  // empty log.
  std::size_t MaxDistanceFrom(const ValuationVector& center) const;

  void ClearLog() { log_.clear(); }

 private:
  Algorithm algorithm_;
  BlackBoxOptions options_;
  std::vector<QueryRecord> log_;
};

// Membership queries against a feasibility set, with a counter and an
// optional budget.
class FeasibilityOracle {
 public:
  explicit FeasibilityOracle(FeasibilitySet feasibility,
                             std::optional<std::uint64_t> budget = std::nullopt)
      : feasibility_(std::move(feasibility)), budget_(budget) {}

  // Throws BudgetExceeded once the budget is used up.
  bool Query(const Allocation& x);

  std::uint64_t count() const { return count_; }
  std::optional<std::uint64_t> budget() const { return budget_; }

 private:
  FeasibilitySet feasibility_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t count_ = 0;
};

}  // namespace dcbb

#endif  // DCBB_BLACKBOX_H_
