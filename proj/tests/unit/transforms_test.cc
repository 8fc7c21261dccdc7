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

#include "dcbb/transforms.h"

#include <gtest/gtest.h>

#include "dcbb/adversaries.h"
#include "dcbb/errors.h"

namespace dcbb {
namespace {

ValuationVector V(const char* s, std::size_t k = 2) {
  return ValuationVector::FromString(s, k);
}
Allocation A(const char* bits) { return Allocation::FromString(bits); }

Allocation Transform(TransformKind kind, const Algorithm& alg, const ValuationVector& v) {
  InstrumentedBlackBox bb(alg);
  return ApplyTransform(kind, bb, v);
}

// Counts pairs (v, i, raise) where agent i loses its item after raising its
// level, by direct re-evaluation.
std::size_t NaiveViolations(const AllocationRule& rule, std::size_t n, std::size_t k) {
  InputSpace space(n, k);
  std::size_t count = 0;
  for (std::uint64_t code = 0; code < space.size(); ++code) {
    const ValuationVector v = space.Decode(code);
    const Allocation x = rule(v);
    for (std::size_t i = 0; i < n; ++i) {
      for (Level high = v[i] + 1; high < k; ++high) {
        if (x[i] && !rule(v.With(i, high))[i]) ++count;
      }
    }
  }
  return count;
}

TEST(TransformIdTest, RoundTrip) {
  for (auto kind : {TransformKind::kConstant, TransformKind::kTwoValue,
                    TransformKind::kTwoValuePlus, TransformKind::kMultiValue}) {
    EXPECT_EQ(ParseTransformKind(TransformId(kind)), kind);
  }
  EXPECT_THROW(ParseTransformKind("three"), ParameterError);
}

TEST(ClassifyTest, Examples) {
  const ValueLadder two = ValueLadder::TwoValue(1, 2);
  const ValueLadder three({Rational(1), Rational(2), Rational(4)});
  EXPECT_EQ(ClassifyAllocation(A("11"), V("10"), two), Level{1});
  EXPECT_EQ(ClassifyAllocation(A("000"), V("210", 3), three), std::nullopt);
  EXPECT_EQ(ClassifyAllocation(A("011"), V("210", 3), three), Level{1});
  EXPECT_EQ(ClassifyAllocation(A("010"), V("210", 3), three), Level{1});
}

TEST(HigherThanTest, Examples) {
  const ValueLadder two = ValueLadder::TwoValue(1, 2);
  const ValueLadder three({Rational(1), Rational(2), Rational(4)});
  EXPECT_TRUE(HigherThan(A("110"), A("100"), V("110"), two));
  EXPECT_FALSE(HigherThan(A("110"), A("110"), V("110"), two));
  // Counts (h:1, m:0, l:1) against (h:1, m:1, l:0).
  EXPECT_FALSE(HigherThan(A("101"), A("110"), V("210", 3), three));
  EXPECT_TRUE(HigherThan(A("110"), A("101"), V("210", 3), three));
}

TEST(ZeroBelowTest, ClearsLowerLevelsOnly) {
  EXPECT_EQ(ZeroBelow(A("111"), V("210", 3), 1).ToString(), "110");
  EXPECT_EQ(ZeroBelow(A("111"), V("210", 3), 0).ToString(), "111");
}

TEST(ConstantAllocationTest, IgnoresInputAndQueriesOnce) {
  auto env = std::make_shared<const Environment>(
      4, ValueLadder::TwoValue(1, 2), NormalizeAntichain(4, {A("0011"), A("1100")}));
  Algorithm alg(env, [](const ValuationVector& v) {
    return v == ValuationVector::Uniform(4, 0) ? A("0011") : A("1100");
  });
  InstrumentedBlackBox bb(alg);
  EXPECT_EQ(ConstantAllocation(bb, V("1111")).ToString(), "0011");
  ASSERT_EQ(bb.query_count(), 1u);
  EXPECT_EQ(bb.log()[0].input, ValuationVector::Uniform(4, 0));
}

TEST(TwoValueTest, AllOnesExamples) {
  const auto inst = GenerateAllOnes(3, ValueLadder::TwoValue(1, 100));
  EXPECT_EQ(Transform(TransformKind::kTwoValue, inst.algorithm, V("111")).ToString(), "111");
  EXPECT_EQ(Transform(TransformKind::kTwoValue, inst.algorithm, V("000")).ToString(), "111");
  const auto pair = GenerateAllOnes(2, ValueLadder::TwoValue(1, 100));
  EXPECT_EQ(Transform(TransformKind::kTwoValue, pair.algorithm, V("10")).ToString(), "10");
}

TEST(TwoValueTest, KeepsOriginalWhenNoNeighborAllocatesAnH) {
  auto env = std::make_shared<const Environment>(
      2, ValueLadder::TwoValue(1, 2), NormalizeAntichain(2, {A("01"), A("10")}));
  Algorithm constant(env, [](const ValuationVector&) { return A("01"); });
  EXPECT_EQ(Transform(TransformKind::kTwoValue, constant, V("10")).ToString(), "01");
}

TEST(TwoValueTest, RejectsLargerLadders) {
  const auto inst = GenerateAllOnes(2, ValueLadder({Rational(1), Rational(2), Rational(3)}));
  EXPECT_THROW(Transform(TransformKind::kTwoValue, inst.algorithm, V("12", 3)), ParameterError);
  EXPECT_THROW(Transform(TransformKind::kTwoValuePlus, inst.algorithm, V("12", 3)),
               ParameterError);
}

TEST(TwoValuePlusTest, AllOnesExamples) {
  const auto pair = GenerateAllOnes(2, ValueLadder::TwoValue(1, 3));
  EXPECT_EQ(Transform(TransformKind::kTwoValuePlus, pair.algorithm, V("10")).ToString(), "11");
  const auto quad = GenerateAllOnes(4, ValueLadder::TwoValue(1, 5));
  EXPECT_EQ(Transform(TransformKind::kTwoValuePlus, quad.algorithm, V("1111")).ToString(),
            "1111");
}

TEST(TwoValuePlusTest, StateExposesStages) {
  const auto pair = GenerateAllOnes(2, ValueLadder::TwoValue(1, 3));
  InstrumentedBlackBox bb(pair.algorithm);
  TwoValuePlusState state(bb);
  EXPECT_EQ(state.Original(V("10")).ToString(), "11");
  EXPECT_EQ(state.Provisional(V("11")).allocation.ToString(), "11");
  EXPECT_EQ(state.Final(V("10")).ToString(), "11");
}

TEST(MultiValueTest, ScheduleForThreeLevels) {
  const auto steps = MultiValueSteps(3);
  const std::vector<LadderStep> expected = {
      {std::nullopt, std::nullopt}, {Level{0}, Level{1}}, {std::nullopt, Level{2}},
      {Level{1}, Level{2}},         {Level{0}, Level{2}}};
  EXPECT_EQ(steps, expected);
  // Each later target t adds one "?" step and t source steps.
  EXPECT_EQ(MultiValueSteps(4).size(), expected.size() + 4);
}

TEST(MultiValueTest, AllOnesExamples) {
  const ValueLadder ladder({Rational(1), Rational(3), Rational(9)});
  const auto inst = GenerateAllOnes(3, ladder);
  EXPECT_EQ(Transform(TransformKind::kMultiValue, inst.algorithm, V("210", 3)).ToString(), "100");
  EXPECT_EQ(Transform(TransformKind::kMultiValue, inst.algorithm, V("000", 3)).ToString(), "111");
  EXPECT_THROW(Transform(TransformKind::kMultiValue,
                   GenerateAllOnes(2, ValueLadder::TwoValue(1, 2)).algorithm, V("10")),
               ParameterError);
}

TEST(TransformPropertyTest, OutputsFeasibleAndMonotoneOnRandomAlgorithms) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (std::size_t n : {2u, 3u, 4u}) {
      const auto two = GenerateRandom(n, ValueLadder::TwoValue(1, n + 1), seed);
      const auto three = GenerateRandom(
          n, ValueLadder({Rational(1), Rational(static_cast<long>(n)),
                          Rational(static_cast<long>(n * n))}),
          seed);
      struct Case {
        TransformKind kind;
        const GeneratedInstance* inst;
      };
      for (const Case& c : {Case{TransformKind::kConstant, &two},
                            Case{TransformKind::kTwoValue, &two},
                            Case{TransformKind::kTwoValuePlus, &two},
                            Case{TransformKind::kMultiValue, &three}}) {
        const auto& env = *c.inst->environment;
        const AllocationRule rule = BindTransform(c.kind, c.inst->algorithm);
        InputSpace space(n, env.ladder.size());
        for (std::uint64_t code = 0; code < space.size(); ++code) {
          EXPECT_TRUE(IsFeasible(rule(space.Decode(code)), env.feasibility));
        }
        EXPECT_EQ(NaiveViolations(rule, n, env.ladder.size()), 0u)
            << TransformId(c.kind) << " n=" << n << " seed=" << seed;
      }
    }
  }
}

TEST(TransformPropertyTest, QueriesStayWithinRadius) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = GenerateRandom(6, ValueLadder::TwoValue(1, 7), seed);
    InputSpace space(6, 2);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      const ValuationVector v = space.Decode(code);
      InstrumentedBlackBox two(inst.algorithm, {.hamming_center = v, .hamming_radius = 3});
      EXPECT_NO_THROW(TwoValue(two, v));
      EXPECT_LE(two.MaxDistanceFrom(v), 2u);
      InstrumentedBlackBox plus(inst.algorithm, {.hamming_center = v, .hamming_radius = 6});
      EXPECT_NO_THROW(TwoValuePlus(plus, v));
      EXPECT_LE(plus.MaxDistanceFrom(v), 5u);
    }
  }
}

TEST(TransformPropertyTest, BindTransformEnforcesRadiusAroundEachInput) {
  const auto inst = GenerateAllOnes(4, ValueLadder::TwoValue(1, 2));
  const AllocationRule rule =
      BindTransform(TransformKind::kTwoValue, inst.algorithm, {.hamming_radius = 1});
  // A(v) allocates an h, so only v itself is queried.
  EXPECT_NO_THROW(rule(V("1000")));
  // No h to allocate: the scan reaches distance 1 and violates radius 1.
  EXPECT_THROW(rule(V("0000")), RestrictionViolation);
}

}  // namespace
}  // namespace dcbb
