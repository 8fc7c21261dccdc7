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

// Exhaustive (or, past the enumeration bound, seeded-sampled) verification of
// allocation rules: monotonicity, welfare preservation, approximation ratios
// and critical-value payments. All quantities are exact rationals.

#ifndef DCBB_VERIFY_H_
#define DCBB_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dcbb/blackbox.h"
#include "dcbb/model.h"
#include "dcbb/rational.h"

namespace dcbb {

struct VerifyOptions {
  // Largest k^n that is enumerated; beyond it the checks sample.
  std::uint64_t enumeration_bound = 2'000'000;
  // Threads used to evaluate the rule. Results do not depend on it.
  unsigned workers = 1;
  // Seed and sample count for the sampling fallback.
  std::uint64_t seed = 0;
  std::uint64_t samples = 10'000;
};

// Rule values at every input, indexed by InputSpace code. Evaluated in
// `workers` contiguous chunks; the first exception thrown by any worker is
// rethrown.
std::vector<Allocation> Tabulate(const AllocationRule& rule,
                                 const InputSpace& space, unsigned workers = 1);

struct MonotonicityViolation {
  // Input at the lower level; the higher input is input.With(agent, high).
  ValuationVector input;
  std::size_t agent = 0;
  Level low = 0;
  Level high = 0;
  bool bit_low = true;
  bool bit_high = false;

  friend bool operator==(const MonotonicityViolation&,
                         const MonotonicityViolation&) = default;
  friend auto operator<=>(const MonotonicityViolation&,
                          const MonotonicityViolation&) = default;
};

struct MonotonicityReport {
  // Sorted canonically.
  std::vector<MonotonicityViolation> violations;
  // Number of (input, agent, low < high) triples examined.
  std::uint64_t checked_pairs = 0;
  bool sampled = false;
  std::uint64_t seed = 0;

  bool monotone() const { return violations.empty(); }
};

// Examines every input and every raise of one agent's level (not only
// adjacent levels). Falls back to sampling `samples` random raises when k^n
// exceeds the enumeration bound.
MonotonicityReport CheckMonotone(const AllocationRule& rule,
                                 const Environment& env,
                                 const VerifyOptions& options = {});

struct WelfareReport {
  // min over inputs with positive original welfare of
  // min(1, welfare(rule) / welfare(original)); 1 if there are none.
  Rational pointwise_min_fraction;
  // Inputs where welfare(rule) >= welfare(original).
  std::uint64_t full_welfare_count = 0;
  std::uint64_t total_inputs = 0;
  // Inputs where the original welfare is 0 (left out of the minimum).
  std::uint64_t zero_welfare_inputs = 0;
  Rational sum_welfare_rule;
  Rational sum_welfare_original;
  Rational approx_ratio_rule;
  Rational approx_ratio_original;
  bool sampled = false;

  // Inputs that lose welfare.
  std::uint64_t loss_count() const { return total_inputs - full_welfare_count; }
  Rational fraction_full_welfare() const {
    if (total_inputs == 0) return Rational(1);
    Rational r{mpz_class(full_welfare_count), mpz_class(total_inputs)};
    r.canonicalize();
    return r;
  }
};

WelfareReport ComputeWelfareReport(const AllocationRule& rule,
                                   const AllocationRule& original,
                                   const Environment& env,
                                   const VerifyOptions& options = {});

// min_v welfare(rule(v)) / OPT(v) over inputs with OPT > 0; 1 when no input
// has positive OPT.
Rational ApproxRatio(const AllocationRule& rule, const Environment& env,
                     const VerifyOptions& options = {});

// full_welfare_count / total_inputs.
Rational FractionFullWelfare(const AllocationRule& rule,
                             const AllocationRule& original,
                             const Environment& env,
                             const VerifyOptions& options = {});

struct PaymentResult {
  Allocation allocation;
  // Winner: the lowest ladder value at or below its bid at which it still
  // wins. Loser: 0.
  std::vector<Rational> payments;
  // False when some agent's bit is not monotone along its own levels up to
  // its bid, in which case the prices are not truthful.
  bool consistent = true;
};

PaymentResult MyersonPayments(const AllocationRule& rule,
                              const ValuationVector& v,
                              const ValueLadder& ladder);

}  // namespace dcbb

#endif  // DCBB_VERIFY_H_
