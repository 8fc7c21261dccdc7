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

// Generators for adversarial algorithm/feasibility constructions and for
// baseline algorithms. Every generated algorithm comes with a serializable
// RuleSpec, so an algorithm written to disk reloads to the same behavior.

#ifndef DCBB_ADVERSARIES_H_
#define DCBB_ADVERSARIES_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dcbb/blackbox.h"
#include "dcbb/model.h"
#include "dcbb/rational.h"

namespace dcbb {

// Explicit exceptional inputs, everything else maps to `fallback`.
struct CaseTableRule {
  std::vector<std::pair<ValuationVector, Allocation>> cases;
  Allocation fallback;
};

// Counts agents at `level`; returns `at_most` when the count is <= threshold
// and `above` otherwise.
struct ThresholdRule {
  Level level = 1;
  std::size_t threshold = 0;
  Allocation at_most;
  Allocation above;
};

// Full table indexed by InputSpace code.
struct TruthTableRule {
  std::vector<Allocation> table;
};

enum class KnapsackPolicy { kGreedyDensity, kBruteForceOptimal };

std::string_view KnapsackPolicyId(KnapsackPolicy policy);  // "greedy", "optimal"
KnapsackPolicy ParseKnapsackPolicy(std::string_view id);

struct KnapsackRule {
  std::vector<Rational> weights;
  Rational capacity;
  KnapsackPolicy policy = KnapsackPolicy::kGreedyDensity;
};

// Hash-seeded choice of a maximal element (or a subset of one) per input.
struct SeededRandomRule {
  std::uint64_t seed = 0;
};

using RuleSpec = std::variant<CaseTableRule, ThresholdRule, TruthTableRule,
                              KnapsackRule, SeededRandomRule>;

// Compiles a rule description into an algorithm over `environment`.
// Throws DimensionError/ParameterError if the description does not fit the
// environment.
Algorithm BuildAlgorithm(std::shared_ptr<const Environment> environment,
                         const RuleSpec& rule, std::string name);

struct GeneratedInstance {
  std::string generator;
  std::shared_ptr<const Environment> environment;
  RuleSpec rule;
  Algorithm algorithm;
};

struct Thm1Instance {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  // Canonical position i is moved to permutation[i]. Only the last 3m/2
  // positions move.
  std::vector<std::size_t> permutation;

  // Canonical (pre-permutation) frame.
  ValuationVector canonical_special_input;   // h^{3m} l^m
  Allocation canonical_special_allocation;   // C
  Allocation canonical_default_allocation;   // D = 0^{2m} 1^{2m}
  std::vector<Allocation> canonical_fakes;

  // Frame seen by transformations.
  ValuationVector special_input;
  Allocation special_allocation;
  Allocation default_allocation;
  std::vector<Allocation> fakes;

  GeneratedInstance instance;
};

// n = 4m agents. Throws ParameterError for odd m, m < 2, or when the fake
// family would exceed one million allocations.
Thm1Instance GenerateThm1(std::size_t m, std::uint64_t seed, const ValueLadder& ladder);

struct BlockAdversaryInstance {
  std::size_t first_block = 0;   // L1 (its last L2 positions form the middle block)
  std::size_t middle_block = 0;  // L2
  std::size_t last_block = 0;    // L3
  std::size_t ones = 0;
  // Offsets of C's ones within the middle block, ascending.
  std::vector<std::size_t> chosen_positions;
  // chain[i] is B_{i+1}: B_1 with the first i middle-block l's raised to h.
  std::vector<ValuationVector> chain;
  Allocation special_allocation;  // C
  Allocation default_allocation;  // D
  GeneratedInstance instance;
};

struct BlockParams {
  std::size_t first_block = 0;
  std::size_t middle_block = 0;
  std::size_t last_block = 0;
  std::size_t ones = 0;
  // Used when explicit_positions is unset.
  std::uint64_t seed = 0;
  std::optional<std::vector<std::size_t>> explicit_positions;
  // Number of raised positions in the last chain element (chain has
  // chain_steps + 1 inputs). Defaults to `ones`.
  std::optional<std::size_t> chain_steps;
};

// Requires L1 > L2 > ones > L3 >= 1; n = L1 + L3.
BlockAdversaryInstance GenerateBlockAdversary(const BlockParams& params,
                                              const ValueLadder& ladder);

struct HammingAdversaryInstance {
  std::size_t m = 0;
  std::size_t f = 0;
  std::size_t threshold = 0;  // m + f
  GeneratedInstance instance;
};

// n = 2m. Requires m >= 1 and f <= m.
HammingAdversaryInstance GenerateHammingAdversary(std::size_t m, std::size_t f,
                                                  const ValueLadder& ladder);

GeneratedInstance GenerateAllOnes(std::size_t n, const ValueLadder& ladder);

// Throws ParameterError for a negative capacity, a non-positive weight, more
// than 20 agents, or more than 16 agents with the brute-force policy.
GeneratedInstance GenerateKnapsack(std::vector<Rational> weights,
                                   Rational capacity, KnapsackPolicy policy,
                                   const ValueLadder& ladder);

// Random antichain of `candidates` allocations (each bit 1 with probability
// 1/2) before normalization. candidates = 0 picks 2..4 from the seed.
FeasibilitySet GenerateRandomFeasibility(std::size_t n, std::uint64_t seed,
                                         std::size_t candidates = 0);

// Seeded random algorithm over an existing environment.
GeneratedInstance GenerateRandomAlgorithm(
    std::shared_ptr<const Environment> environment, std::uint64_t seed);

// Random environment and random algorithm from one seed.
GeneratedInstance GenerateRandom(std::size_t n, const ValueLadder& ladder,
                                 std::uint64_t seed);

// Deterministic 64-bit mixer used for all seeded choices.
std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace dcbb

#endif  // DCBB_ADVERSARIES_H_
