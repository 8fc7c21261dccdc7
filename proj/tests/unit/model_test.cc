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

#include "dcbb/model.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dcbb/errors.h"
#include "dcbb/rational.h"

namespace dcbb {
namespace {

Allocation A(const char* bits) { return Allocation::FromString(bits); }

std::vector<Allocation> Maximal(std::size_t n, std::vector<const char*> bits) {
  std::vector<Allocation> out;
  for (auto b : bits) out.push_back(A(b));
  return NormalizeAntichain(n, out).maximal();
}

// Every subset of every maximal element, by explicit bit masking.
std::set<std::uint32_t> DownwardClosure(const FeasibilitySet& f) {
  std::set<std::uint32_t> out;
  for (const auto& m : f.maximal()) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) mask |= 1u << i;
    }
    for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
      out.insert(sub);
      if (sub == 0) break;
    }
  }
  return out;
}

TEST(RationalTest, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(ParseRational("7"), Rational(7));
  EXPECT_EQ(ParseRational("-3"), Rational(-3));
  EXPECT_EQ(ParseRational("6/4"), Rational(3, 2));
  EXPECT_EQ(ParseRational("0.25"), Rational(1, 4));
  EXPECT_EQ(FormatRational(ParseRational("6/4")), "3/2");
  EXPECT_THROW(ParseRational("1/0"), ParseError);
  EXPECT_THROW(ParseRational("abc"), ParseError);
  EXPECT_THROW(ParseRational(""), ParseError);
}

TEST(ValueLadderTest, RejectsNonIncreasingOrNonPositive) {
  EXPECT_THROW(ValueLadder({Rational(10), Rational(1)}), ParameterError);
  EXPECT_THROW(ValueLadder({Rational(1), Rational(1)}), ParameterError);
  EXPECT_THROW(ValueLadder({Rational(0), Rational(1)}), ParameterError);
  EXPECT_THROW(ValueLadder({Rational(1)}), ParameterError);
  const ValueLadder ladder = ValueLadder::TwoValue(1, 10);
  EXPECT_EQ(ladder.size(), 2u);
  EXPECT_EQ(ladder.top(), 1);
}

TEST(ValuationVectorTest, StringRoundTrip) {
  const auto v = ValuationVector::FromString("0120", 3);
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(v[2], 2);
  EXPECT_EQ(v.ToString(), "0120");
  EXPECT_EQ(v.CountLevel(0), 2u);
  EXPECT_THROW(ValuationVector::FromString("012", 2), ParseError);
  EXPECT_THROW(ValuationVector::FromString("0x", 2), ParseError);
}

TEST(AllocationTest, DominationRequiresEqualLength) {
  EXPECT_TRUE(A("010").DominatedBy(A("110")));
  EXPECT_FALSE(A("011").DominatedBy(A("110")));
  EXPECT_THROW(A("01").DominatedBy(A("011")), DimensionError);
  EXPECT_THROW(Allocation::FromString("012"), ParseError);
}

TEST(NormalizeAntichainTest, Examples) {
  EXPECT_EQ(Maximal(2, {"11", "10", "01"}), std::vector<Allocation>{A("11")});
  EXPECT_EQ(Maximal(4, {"1100", "0011"}), (std::vector<Allocation>{A("1100"), A("0011")}));
  EXPECT_EQ(Maximal(3, {"110", "011", "010"}), (std::vector<Allocation>{A("110"), A("011")}));
  EXPECT_THROW(NormalizeAntichain(3, {A("11")}), DimensionError);
}

TEST(NormalizeAntichainTest, PreservesDownwardClosureOnRandomFamilies) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<Allocation> raw;
    const std::size_t count = rng() % 6;
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<std::uint8_t> bits(n);
      for (auto& b : bits) b = rng() % 2;
      raw.emplace_back(bits);
    }
    // Closure of the raw family computed with a permissive set.
    std::set<std::uint32_t> expected;
    for (const auto& m : raw) {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i]) mask |= 1u << i;
      }
      for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
        expected.insert(sub);
        if (sub == 0) break;
      }
    }
    const FeasibilitySet f = NormalizeAntichain(n, raw);
    EXPECT_EQ(DownwardClosure(f), expected);
    for (const auto& x : f.maximal()) {
      for (const auto& y : f.maximal()) {
        if (!(x == y)) EXPECT_FALSE(x.DominatedBy(y));
      }
    }
  }
}

TEST(EnvironmentTest, RejectsMismatchedFeasibility) {
  EXPECT_THROW(Environment(3, ValueLadder::TwoValue(1, 2), FeasibilitySet(2)),
               DimensionError);
}

TEST(WelfareTest, SumsValuesOfWinners) {
  const ValueLadder ladder({Rational(1), Rational(3, 2), Rational(10)});
  EXPECT_EQ(Welfare(ValuationVector::FromString("210", 3), A("110"), ladder),
            Rational(23, 2));
}

TEST(WelfareTest, HandComputedRationalValue) {
  // 1/7 + 2 + 5/7.
  const ValueLadder ladder({Rational(1, 7), Rational(5, 7), Rational(2)});
  EXPECT_EQ(Welfare(ValuationVector::FromString("021", 3), A("111"), ladder),
            Rational(20, 7));
}

TEST(FeasibilityTest, MembershipIsDownwardClosure) {
  const FeasibilitySet f = NormalizeAntichain(4, {A("1100"), A("0011")});
  EXPECT_TRUE(IsFeasible(A("0000"), f));
  EXPECT_TRUE(IsFeasible(A("0100"), f));
  EXPECT_FALSE(IsFeasible(A("1010"), f));
  EXPECT_FALSE(IsFeasible(A("0000"), FeasibilitySet(4)));
}

TEST(OptWelfareTest, AgreesWithDownwardClosureBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<Allocation> raw;
    for (int c = 0; c < 3; ++c) {
      std::vector<std::uint8_t> bits(n);
      for (auto& b : bits) b = rng() % 2;
      raw.emplace_back(bits);
    }
    const FeasibilitySet f = NormalizeAntichain(n, raw);
    const ValueLadder ladder({Rational(1), Rational(3), Rational(7, 2)});
    const auto closure = DownwardClosure(f);
    InputSpace space(n, 3);
    for (std::uint64_t code = 0; code < space.size(); code += 1 + rng() % 5) {
      const ValuationVector v = space.Decode(code);
      Rational best = 0;
      for (std::uint32_t mask : closure) {
        Rational w = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) w += ladder.value(v[i]);
        }
        if (w > best) best = w;
      }
      const Optimum opt = OptWelfare(v, f, ladder);
      EXPECT_EQ(opt.welfare, best);
      ASSERT_TRUE(opt.argmax.has_value());
      EXPECT_EQ(Welfare(v, *opt.argmax, ladder), best);
    }
  }
}

TEST(OptWelfareTest, EmptyFeasibilityIsFlagged) {
  const Optimum opt = OptWelfare(ValuationVector::Uniform(3, 1), FeasibilitySet(3),
                                 ValueLadder::TwoValue(1, 2));
  EXPECT_TRUE(opt.feasibility_empty);
  EXPECT_EQ(opt.welfare, 0);
  EXPECT_FALSE(opt.argmax.has_value());
}

TEST(InputSpaceTest, EncodeDecodeRoundTrip) {
  InputSpace space(4, 3);
  EXPECT_EQ(space.size(), 81u);
  for (std::uint64_t code = 0; code < space.size(); ++code) {
    EXPECT_EQ(space.Encode(space.Decode(code)), code);
  }
  EXPECT_EQ(space.Decode(1).ToString(), "0001");
  EXPECT_FALSE(InputSpace::Representable(64, 2));
  EXPECT_THROW(InputSpace(64, 2), ParameterError);
}

TEST(ForEachAtDistanceTest, VisitsEachNeighborOnceInCanonicalOrder) {
  const auto v = ValuationVector::FromString("012", 3);
  for (std::size_t d = 0; d <= 3; ++d) {
    std::vector<ValuationVector> seen;
    ForEachAtDistance(v, 3, d, [&](const ValuationVector& u) {
      seen.push_back(u);
      return false;
    });
    // Count: C(3,d) * 2^d.
    std::size_t expected = 1;
    for (std::size_t i = 0; i < d; ++i) expected = expected * (3 - i) / (i + 1);
    expected <<= d;
    EXPECT_EQ(seen.size(), expected) << "distance " << d;
    std::set<ValuationVector> unique(seen.begin(), seen.end());
    EXPECT_EQ(unique.size(), seen.size());
    for (const auto& u : seen) {
      std::size_t diff = 0;
      for (std::size_t i = 0; i < 3; ++i) diff += u[i] != v[i];
      EXPECT_EQ(diff, d);
    }
  }
  std::vector<std::string> order;
  ForEachAtDistance(ValuationVector::FromString("00", 2), 2, 1,
                    [&](const ValuationVector& u) {
                      order.push_back(u.ToString());
                      return false;
                    });
  EXPECT_EQ(order, (std::vector<std::string>{"10", "01"}));
}

TEST(ForEachAtDistanceTest, StopsEarly) {
  int calls = 0;
  const bool stopped = ForEachAtDistance(ValuationVector::Uniform(4, 0), 2, 2,
                                         [&](const ValuationVector&) {
                                           return ++calls == 3;
                                         });
  EXPECT_TRUE(stopped);
  EXPECT_EQ(calls, 3);
}

}  // namespace
}  // namespace dcbb
