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

// Domain model for single-parameter downward-closed environments: value
// ladders, valuation vectors, binary allocations, feasibility sets stored as
// antichains of maximal allocations, and exact welfare accounting.

#ifndef DCBB_MODEL_H_
#define DCBB_MODEL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcbb/rational.h"

namespace dcbb {

// Index into a ValueLadder. Level 0 is the lowest value.
using Level = std::uint8_t;

// Largest ladder length; level symbols are drawn from [0-9a-z].
inline constexpr std::size_t kMaxLadderSize = 36;

// The ordered set a_1 < ... < a_k of values an agent may hold.
class ValueLadder {
 public:
  // Throws ParameterError unless k >= 2, every value is strictly positive
  // and the sequence is strictly increasing.
  explicit ValueLadder(std::vector<Rational> values);

  // The (l, h) ladder.
  static ValueLadder TwoValue(const Rational& low, const Rational& high);

  std::size_t size() const { return values_.size(); }
  const Rational& value(Level level) const { return values_.at(level); }
  const std::vector<Rational>& values() const { return values_; }
  Level top() const { return static_cast<Level>(values_.size() - 1); }

  friend bool operator==(const ValueLadder&, const ValueLadder&) = default;

 private:
  std::vector<Rational> values_;
};

// One input to an allocation rule: a ladder level per agent.
class ValuationVector {
 public:
  ValuationVector() = default;
  explicit ValuationVector(std::vector<Level> levels)
      : levels_(std::move(levels)) {}

  static ValuationVector Uniform(std::size_t n, Level level) {
    return ValuationVector(std::vector<Level>(n, level));
  }

  // Parses one symbol per agent ('0'-'9' then 'a'-'z'); every level must be
  // below `ladder_size`. Throws ParseError otherwise.
  static ValuationVector FromString(std::string_view text,
                                    std::size_t ladder_size);

  std::size_t size() const { return levels_.size(); }
  Level operator[](std::size_t i) const { return levels_[i]; }
  std::span<const Level> levels() const { return levels_; }

  // Copy with agent i moved to `level`.
  ValuationVector With(std::size_t i, Level level) const {
    ValuationVector out = *this;
    out.levels_.at(i) = level;
    return out;
  }
  void Set(std::size_t i, Level level) { levels_.at(i) = level; }

  // Number of agents whose level equals `level`.
  std::size_t CountLevel(Level level) const;

  std::string ToString() const;

  friend bool operator==(const ValuationVector&,
                         const ValuationVector&) = default;
  friend auto operator<=>(const ValuationVector&,
                          const ValuationVector&) = default;

 private:
  std::vector<Level> levels_;
};

// A 0/1 allocation vector.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<std::uint8_t> bits);

  static Allocation Zeros(std::size_t n) {
    return Allocation(std::vector<std::uint8_t>(n, 0));
  }
  static Allocation Ones(std::size_t n) {
    return Allocation(std::vector<std::uint8_t>(n, 1));
  }
  // "0110" style. Throws ParseError on other characters.
  static Allocation FromString(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void Set(std::size_t i, bool on) { bits_.at(i) = on ? 1 : 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  std::size_t Count() const;
  bool IsEmpty() const { return Count() == 0; }

  // Coordinatewise x <= other. Throws DimensionError on a length mismatch.
  bool DominatedBy(const Allocation& other) const;

  std::string ToString() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// A downward-closed family of allocations, stored as the antichain of its
// maximal elements. Construct through NormalizeAntichain.
class FeasibilitySet {
 public:
  // The empty family over n agents (no allocation is feasible).
  explicit FeasibilitySet(std::size_t n) : n_(n) {}

  std::size_t n() const { return n_; }
  const std::vector<Allocation>& maximal() const { return maximal_; }
  bool empty() const { return maximal_.empty(); }

  friend bool operator==(const FeasibilitySet&,
                         const FeasibilitySet&) = default;

 private:
  friend FeasibilitySet NormalizeAntichain(std::size_t n,
                                           std::vector<Allocation> allocs);
  std::size_t n_;
  // Sorted in descending lexicographic order of the bit strings.
  std::vector<Allocation> maximal_;
};

// Drops every allocation dominated by another one (and duplicates). The
// downward closure of the input is preserved. Throws DimensionError if some
// allocation does not have length n.
FeasibilitySet NormalizeAntichain(std::size_t n, std::vector<Allocation> allocs);

struct Environment {
  // Throws DimensionError if feasibility.n() != n.
  Environment(std::size_t n, ValueLadder ladder, FeasibilitySet feasibility);

  std::size_t n;
  ValueLadder ladder;
  FeasibilitySet feasibility;

  friend bool operator==(const Environment&, const Environment&) = default;
};

// v . x with v read through the ladder.
Rational Welfare(const ValuationVector& v, const Allocation& x,
                 const ValueLadder& ladder);

bool IsFeasible(const Allocation& x, const FeasibilitySet& feasibility);

struct Optimum {
  Rational welfare;
  // First maximal allocation attaining the optimum, in the set's canonical
  // order. Unset when the feasibility set is empty.
  std::optional<Allocation> argmax;
  // True when the feasibility set had no maximal elements; welfare is 0.
  bool feasibility_empty = false;
};

// OPT_F(v). Scans the maximal elements only, which is exact because every
// ladder value is positive.
Optimum OptWelfare(const ValuationVector& v, const FeasibilitySet& feasibility,
                   const ValueLadder& ladder);

// The input lattice {0..k-1}^n, indexed so that code order is lexicographic
// order of the level strings (agent 0 is the most significant digit).
class InputSpace {
 public:
  // Throws ParameterError when k^n does not fit in 63 bits.
  InputSpace(std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::uint64_t size() const { return size_; }

  ValuationVector Decode(std::uint64_t code) const;
  std::uint64_t Encode(const ValuationVector& v) const;

  // Whether k^n fits; lets callers choose between enumeration and sampling
  // without catching.
  static bool Representable(std::size_t n, std::size_t k);

 private:
  std::size_t n_;
  std::size_t k_;
  std::uint64_t size_;
};

// Visits every input at Hamming distance exactly `distance` from `v` in the
// canonical order: position subsets in ascending lexicographic order, and for
// each subset the replacement levels as an odometer (first chosen position
// most significant, levels ascending, skipping v's own level). Stops early
// and returns true as soon as `visit` returns true.
bool ForEachAtDistance(const ValuationVector& v, std::size_t ladder_size,
                       std::size_t distance,
                       const std::function<bool(const ValuationVector&)>& visit);

}  // namespace dcbb

template <>
struct std::hash<dcbb::ValuationVector> {
  std::size_t operator()(const dcbb::ValuationVector& v) const noexcept {
    const auto levels = v.levels();
    return std::hash<std::string_view>{}(std::string_view(
        reinterpret_cast<const char*>(levels.data()), levels.size()));
  }
};

template <>
struct std::hash<dcbb::Allocation> {
  std::size_t operator()(const dcbb::Allocation& x) const noexcept {
    const auto bits = x.bits();
    return std::hash<std::string_view>{}(std::string_view(
        reinterpret_cast<const char*>(bits.data()), bits.size()));
  }
};

#endif  // DCBB_MODEL_H_
