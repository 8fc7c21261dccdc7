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

#include "dcbb/adversaries.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dcbb/blackbox.h"
#include "dcbb/errors.h"

namespace dcbb {
namespace {

const ValueLadder kTwo = ValueLadder::TwoValue(1, 2);

ValuationVector V(const char* s) { return ValuationVector::FromString(s, 2); }
Allocation A(const char* bits) { return Allocation::FromString(bits); }

std::size_t OnesIn(const Allocation& x, std::size_t begin, std::size_t end) {
  std::size_t c = 0;
  for (std::size_t i = begin; i < end; ++i) c += x[i];
  return c;
}

void ExpectAllOutputsFeasible(const GeneratedInstance& inst) {
  const Environment& env = *inst.environment;
  InputSpace space(env.n, env.ladder.size());
  for (std::uint64_t code = 0; code < space.size(); ++code) {
    EXPECT_TRUE(IsFeasible(inst.algorithm(space.Decode(code)), env.feasibility));
  }
}

TEST(Thm1Test, CanonicalShapesForMTwo) {
  const Thm1Instance t = GenerateThm1(2, 7, kTwo);
  ASSERT_EQ(t.instance.environment->n, 8u);
  EXPECT_EQ(t.canonical_special_input.ToString(), "11111100");
  EXPECT_EQ(OnesIn(t.canonical_special_allocation, 0, 4), 3u);
  EXPECT_EQ(OnesIn(t.canonical_special_allocation, 4, 6), 0u);
  EXPECT_EQ(OnesIn(t.canonical_special_allocation, 6, 8), 2u);
  EXPECT_EQ(t.canonical_default_allocation.ToString(), "00001111");
  for (const auto& fake : t.canonical_fakes) {
    EXPECT_EQ(OnesIn(fake, 0, 4), 0u);
    EXPECT_EQ(OnesIn(fake, 4, 6), 0u);
    EXPECT_EQ(OnesIn(fake, 6, 8), 2u);
  }
  for (const auto& fake : t.fakes) {
    EXPECT_TRUE(IsFeasible(fake, t.instance.environment->feasibility));
  }
}

TEST(Thm1Test, PermutationMovesOnlyTheTail) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Thm1Instance t = GenerateThm1(4, seed, kTwo);
    const std::size_t n = 16, fixed = n - 3 * 4 / 2;
    std::vector<std::size_t> sorted = t.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(sorted[i], i);
    for (std::size_t i = 0; i < fixed; ++i) EXPECT_EQ(t.permutation[i], i);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(t.special_input[t.permutation[i]], t.canonical_special_input[i]);
      EXPECT_EQ(t.special_allocation[t.permutation[i]],
                t.canonical_special_allocation[i]);
    }
    EXPECT_EQ(t.canonical_fakes.size(), t.fakes.size());
  }
}

TEST(Thm1Test, DefaultBranchAndDeterminism) {
  const Thm1Instance t = GenerateThm1(2, 3, kTwo);
  EXPECT_EQ(t.instance.algorithm(t.special_input), t.special_allocation);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    std::vector<Level> levels(8);
    for (auto& l : levels) l = rng() % 2;
    ValuationVector v(levels);
    if (v == t.special_input) continue;
    EXPECT_EQ(t.instance.algorithm(v), t.default_allocation);
  }
  const Thm1Instance again = GenerateThm1(2, 3, kTwo);
  EXPECT_EQ(again.permutation, t.permutation);
  EXPECT_EQ(again.special_allocation, t.special_allocation);
}

TEST(Thm1Test, RejectsOddOrTinyM) {
  EXPECT_THROW(GenerateThm1(3, 1, kTwo), ParameterError);
  EXPECT_THROW(GenerateThm1(0, 1, kTwo), ParameterError);
}

TEST(BlockTest, SpecialInputAndChain) {
  BlockParams p;
  p.first_block = 8;
  p.middle_block = 4;
  p.last_block = 1;
  p.ones = 2;
  p.seed = 5;
  const BlockAdversaryInstance b = GenerateBlockAdversary(p, kTwo);
  ASSERT_EQ(b.instance.environment->n, 9u);
  ASSERT_FALSE(b.chain.empty());
  EXPECT_EQ(b.chain[0].ToString(), "111100001");
  EXPECT_EQ(OnesIn(b.special_allocation, 4, 8), 2u);
  EXPECT_EQ(b.special_allocation.Count(), 2u);
  EXPECT_EQ(b.default_allocation.ToString(), "000000001");
  EXPECT_EQ(b.instance.algorithm(b.chain[0]), b.special_allocation);
  ASSERT_GE(b.chain.size(), 2u);
  EXPECT_EQ(b.instance.algorithm(b.chain[1]), b.default_allocation);
  for (std::size_t i = 0; i < b.chain.size(); ++i) {
    EXPECT_EQ(HammingDistance(b.chain[0], b.chain[i]), i);
  }
  ExpectAllOutputsFeasible(b.instance);
}

TEST(BlockTest, ExplicitPositionsAndOrdering) {
  BlockParams p{.first_block = 8, .middle_block = 4, .last_block = 1, .ones = 2};
  p.explicit_positions = std::vector<std::size_t>{0, 3};
  const BlockAdversaryInstance b = GenerateBlockAdversary(p, kTwo);
  EXPECT_EQ(b.special_allocation.ToString(), "000010010");
  p.middle_block = 1;
  EXPECT_THROW(GenerateBlockAdversary(p, kTwo), ParameterError);
  BlockParams q{.first_block = 8, .middle_block = 2, .last_block = 2, .ones = 2};
  EXPECT_THROW(GenerateBlockAdversary(q, kTwo), ParameterError);
}

TEST(HammingTest, ThresholdBoundary) {
  const auto h = GenerateHammingAdversary(6, 3, kTwo);
  EXPECT_EQ(h.threshold, 9u);
  EXPECT_EQ(h.instance.algorithm(V("111111111000")).ToString(), "000000111111");
  EXPECT_EQ(h.instance.algorithm(V("111111111100")).ToString(), "111111000000");
  EXPECT_EQ(h.instance.environment->feasibility.maximal().size(), 2u);
}

TEST(AllOnesTest, EverythingFeasible) {
  const auto inst = GenerateAllOnes(4, kTwo);
  EXPECT_EQ(inst.environment->feasibility.maximal(), std::vector<Allocation>{A("1111")});
  EXPECT_EQ(inst.algorithm(V("0101")).ToString(), "1111");
  const Optimum opt = OptWelfare(V("0101"), inst.environment->feasibility, kTwo);
  EXPECT_EQ(opt.welfare, 6);
}

TEST(KnapsackTest, Examples) {
  const auto single = GenerateKnapsack({1, 1}, 1, KnapsackPolicy::kBruteForceOptimal, kTwo);
  EXPECT_EQ(single.environment->feasibility.maximal(),
            (std::vector<Allocation>{A("10"), A("01")}));
  const auto optimal =
      GenerateKnapsack({2, 2, 3}, 4, KnapsackPolicy::kBruteForceOptimal, kTwo);
  EXPECT_EQ(optimal.algorithm(V("110")).ToString(), "110");
  EXPECT_THROW(GenerateKnapsack({1, 0}, 1, KnapsackPolicy::kGreedyDensity, kTwo),
               ParameterError);
  EXPECT_THROW(GenerateKnapsack({1}, -1, KnapsackPolicy::kGreedyDensity, kTwo),
               ParameterError);
}

TEST(KnapsackTest, GreedyMatchesOptimalWithEqualWeights) {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<Rational> weights(n, Rational(2));
    for (long cap : {2L, 4L, 6L}) {
      const auto greedy =
          GenerateKnapsack(weights, cap, KnapsackPolicy::kGreedyDensity, kTwo);
      const auto optimal =
          GenerateKnapsack(weights, cap, KnapsackPolicy::kBruteForceOptimal, kTwo);
      InputSpace space(n, 2);
      for (std::uint64_t code = 0; code < space.size(); ++code) {
        const auto v = space.Decode(code);
        EXPECT_EQ(Welfare(v, greedy.algorithm(v), kTwo),
                  Welfare(v, optimal.algorithm(v), kTwo));
      }
    }
  }
}

TEST(RandomTest, DeterministicFeasibleAndSeedSensitive) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = GenerateRandom(6, kTwo, seed);
    const auto b = GenerateRandom(6, kTwo, seed);
    InputSpace space(6, 2);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      const auto v = space.Decode(code);
      EXPECT_EQ(a.algorithm(v), b.algorithm(v));
    }
    ExpectAllOutputsFeasible(a);
  }
  auto env = std::make_shared<const Environment>(
      6, kTwo, NormalizeAntichain(6, {A("111000"), A("000111")}));
  const auto r1 = GenerateRandomAlgorithm(env, 1);
  const auto r2 = GenerateRandomAlgorithm(env, 2);
  bool differ = false;
  InputSpace space(6, 2);
  for (std::uint64_t code = 0; code < space.size() && !differ; ++code) {
    const auto v = space.Decode(code);
    differ = !(r1.algorithm(v) == r2.algorithm(v));
  }
  EXPECT_TRUE(differ);
}

TEST(BuildAlgorithmTest, RejectsRulesThatDoNotFit) {
  auto env = std::make_shared<const Environment>(2, kTwo, NormalizeAntichain(2, {A("11")}));
  EXPECT_THROW(BuildAlgorithm(env, CaseTableRule{{}, A("111")}, "bad"), DimensionError);
  EXPECT_THROW(BuildAlgorithm(env, TruthTableRule{{A("11")}}, "bad"), DimensionError);
}

}  // namespace
}  // namespace dcbb
