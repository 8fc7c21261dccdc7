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

#include <gtest/gtest.h>

#include "dcbb/adversaries.h"
#include "dcbb/errors.h"

namespace dcbb {
namespace {

ValuationVector V(const char* s) { return ValuationVector::FromString(s, 2); }

TEST(HammingDistanceTest, Examples) {
  EXPECT_EQ(HammingDistance(V("100"), V("100")), 0u);
  EXPECT_EQ(HammingDistance(V("10"), V("01")), 2u);
  EXPECT_EQ(HammingDistance(V("11000"), V("10001")), 2u);
  EXPECT_THROW(HammingDistance(V("10"), V("100")), DimensionError);
}

TEST(AlgorithmTest, RejectsWrongLength) {
  const auto inst = GenerateAllOnes(3, ValueLadder::TwoValue(1, 2));
  EXPECT_THROW(inst.algorithm(V("10")), DimensionError);
  EXPECT_THROW(Algorithm()(V("1")), ParameterError);
}

TEST(InstrumentedBlackBoxTest, LogsEveryQuery) {
  const auto inst = GenerateAllOnes(3, ValueLadder::TwoValue(1, 2));
  InstrumentedBlackBox bb(inst.algorithm);
  EXPECT_EQ(bb.Query(V("101")).ToString(), "111");
  EXPECT_EQ(bb.query_count(), 1u);
  bb.Query(V("000"));
  ASSERT_EQ(bb.log().size(), 2u);
  EXPECT_EQ(bb.log()[1].input, V("000"));
  EXPECT_EQ(bb.MaxDistanceFrom(V("111")), 3u);
  // Replaying the log reproduces every answer.
  for (const auto& q : bb.log()) EXPECT_EQ(inst.algorithm(q.input), q.output);
  bb.ClearLog();
  EXPECT_EQ(bb.query_count(), 0u);
}

TEST(InstrumentedBlackBoxTest, ZeroBudgetRejectsFirstQuery) {
  const auto inst = GenerateAllOnes(2, ValueLadder::TwoValue(1, 2));
  InstrumentedBlackBox bb(inst.algorithm, {.budget = 0});
  EXPECT_THROW(bb.Query(V("00")), BudgetExceeded);
  EXPECT_EQ(bb.query_count(), 0u);
}

TEST(InstrumentedBlackBoxTest, RadiusIsStrict) {
  const auto inst = GenerateHammingAdversary(6, 3, ValueLadder::TwoValue(1, 2)).instance;
  BlackBoxOptions options;
  options.hamming_center = V("111111000000");
  options.hamming_radius = 3;
  InstrumentedBlackBox bb(inst.algorithm, options);
  EXPECT_NO_THROW(bb.Query(V("111111110000")));
  EXPECT_THROW(bb.Query(V("111111111000")), RestrictionViolation);
  EXPECT_EQ(bb.query_count(), 1u);
}

TEST(InstrumentedBlackBoxTest, OutputCheckingCatchesInfeasibleAnswers) {
  auto env = std::make_shared<const Environment>(
      2, ValueLadder::TwoValue(1, 2),
      NormalizeAntichain(2, {Allocation::FromString("10")}));
  Algorithm bad(env, [](const ValuationVector&) { return Allocation::FromString("11"); });
  InstrumentedBlackBox unchecked(bad);
  EXPECT_NO_THROW(unchecked.Query(V("00")));
  InstrumentedBlackBox checked(bad, {.check_outputs = true});
  EXPECT_THROW(checked.Query(V("00")), InfeasibleOutput);
}

TEST(PolynomialBudgetTest, Saturates) {
  EXPECT_EQ(PolynomialBudget(3, 2, 4), 48u);
  EXPECT_EQ(PolynomialBudget(1, 0, 100), 1u);
  EXPECT_EQ(PolynomialBudget(2, 64, 1000), UINT64_MAX);
}

TEST(FeasibilityOracleTest, CountsAndEnforcesBudget) {
  FeasibilityOracle oracle(NormalizeAntichain(2, {Allocation::FromString("10")}), 1);
  EXPECT_TRUE(oracle.Query(Allocation::Zeros(2)));
  EXPECT_EQ(oracle.count(), 1u);
  EXPECT_THROW(oracle.Query(Allocation::Zeros(2)), BudgetExceeded);
  EXPECT_EQ(oracle.count(), 1u);
}

TEST(FeasibilityOracleTest, AcceptsThm1FakeAllocations) {
  const Thm1Instance t = GenerateThm1(2, 7, ValueLadder::TwoValue(1, 2));
  FeasibilityOracle oracle(t.instance.environment->feasibility);
  for (const auto& fake : t.fakes) EXPECT_TRUE(oracle.Query(fake));
  EXPECT_EQ(oracle.count(), t.fakes.size());
}

}  // namespace
}  // namespace dcbb
