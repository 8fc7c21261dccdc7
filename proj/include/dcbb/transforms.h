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

// Monotone black-box transformations. Each one sees the original algorithm
// only through an InstrumentedBlackBox and returns an allocation that is a
// coordinatewise subset of some queried allocation, so feasibility follows
// from downward closure.
//
// Wherever a step says "take any allocation with property P", the
// implementation scans candidate inputs in the canonical order of
// ForEachAtDistance and takes the first one that qualifies.

#ifndef DCBB_TRANSFORMS_H_
#define DCBB_TRANSFORMS_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dcbb/blackbox.h"
#include "dcbb/model.h"

namespace dcbb {

enum class TransformKind { kConstant, kTwoValue, kTwoValuePlus, kMultiValue };

// Stable identifiers: "const", "two", "two-plus", "multi".
std::string_view TransformId(TransformKind kind);
// Throws ParameterError for an unknown identifier.
TransformKind ParseTransformKind(std::string_view id);

// Highest level j such that x has a 1 at a position where v sits at level j;
// nullopt for the all-zero allocation.
std::optional<Level> ClassifyAllocation(const Allocation& x,
                                        const ValuationVector& v,
                                        const ValueLadder& ladder);

// Lexicographic comparison of per-level 1-counts, highest level first.
// True iff x is strictly greater than y at v.
bool HigherThan(const Allocation& x, const Allocation& y,
                const ValuationVector& v, const ValueLadder& ladder);

// Clears every bit at a position whose level is strictly below `level`.
Allocation ZeroBelow(const Allocation& x, const ValuationVector& v, Level level);

// Returns A(a_1 a_1 ... a_1) whatever v is. Exactly one query.
Allocation ConstantAllocation(InstrumentedBlackBox& bb, const ValuationVector& v);

// Two-value transformation. Keeps A(v) with the l's cleared if it already
// allocates some h; otherwise adopts the first allocation found at distance 1,
// then distance 2, that allocates an h of v, again clearing the l's; failing
// both, returns A(v) untouched. Requires a two-level ladder.
Allocation TwoValue(InstrumentedBlackBox& bb, const ValuationVector& v);

// Two-value transformation with provisional allocations. Requires a
// two-level ladder.
Allocation TwoValuePlus(InstrumentedBlackBox& bb, const ValuationVector& v);

// Multi-value ladder transformation, k >= 3. Throws ParameterError for k < 3.
Allocation MultiValue(InstrumentedBlackBox& bb, const ValuationVector& v);

// Dispatch on kind.
Allocation ApplyTransform(TransformKind kind, InstrumentedBlackBox& bb,
                          const ValuationVector& v);

// One step of the multi-value schedule. An unset source matches any class;
// an unset target means "any strictly higher class". When the source is
// unset and the target is set, only classes below the target match.
struct LadderStep {
  std::optional<Level> source;
  std::optional<Level> target;
  friend bool operator==(const LadderStep&, const LadderStep&) = default;
};

// Step j (0-based) scans inputs at Hamming distance j + 1. For k = 3 this is
// ?->?, 0->1, ?->2, 1->2, 0->2.
std::vector<LadderStep> MultiValueSteps(std::size_t k);

// Memoized evaluation state for TwoValuePlus around one input. Exposed so
// tests can look at intermediate allocations; the transformation itself
// builds one per call.
class TwoValuePlusState {
 public:
  enum class Stage { kOriginal, kUpgraded, kZeroed };

  struct Entry {
    Allocation allocation;
    Stage stage;
  };

  explicit TwoValuePlusState(InstrumentedBlackBox& bb);

  // A(u), queried at most once per input.
  const Allocation& Original(const ValuationVector& u);
  // Allocation after the upgrade among neighbors of an h-allocation.
  const Entry& AfterUpgrade(const ValuationVector& u);
  // Provisional allocation: upgrade, adoption from distance 1 then 2, and
  // clearing the l's when the result beats A(u) on h-count.
  const Entry& Provisional(const ValuationVector& u);
  // Final allocation: provisional, with each 1 on an l cleared iff raising
  // that position to h gives an input whose provisional allocation has a 0
  // there.
  Allocation Final(const ValuationVector& v);

 private:
  std::size_t HighCount(const Allocation& x, const ValuationVector& u) const;

  InstrumentedBlackBox& bb_;
  Level high_;
  std::unordered_map<ValuationVector, Allocation> original_;
  std::unordered_map<ValuationVector, Entry> upgraded_;
  std::unordered_map<ValuationVector, Entry> provisional_;
};

// Wraps a transformation of `algorithm` as an allocation rule. Each call
// builds its own InstrumentedBlackBox from `options`; if a Hamming radius is
// set without a center, the center is the call's input. Thread-safe.
AllocationRule BindTransform(TransformKind kind, Algorithm algorithm,
                             BlackBoxOptions options = {});

}  // namespace dcbb

#endif  // DCBB_TRANSFORMS_H_
