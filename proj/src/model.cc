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

#include <algorithm>
#include <limits>

#include "dcbb/errors.h"

namespace dcbb {
namespace {

constexpr std::string_view kLevelSymbols = "0123456789abcdefghijklmnopqrstuvwxyz";

void CheckSameLength(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

}  // namespace

ValueLadder::ValueLadder(std::vector<Rational> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw ParameterError("value ladder needs at least two values");
  }
  if (values_.size() > kMaxLadderSize) {
    throw ParameterError("value ladder longer than " +
                         std::to_string(kMaxLadderSize));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] <= 0) {
      throw ParameterError("value ladder entries must be positive, got " +
                           FormatRational(values_[i]));
    }
    if (i > 0 && !(values_[i - 1] < values_[i])) {
      throw ParameterError("value ladder must be strictly increasing");
    }
  }
}

ValueLadder ValueLadder::TwoValue(const Rational& low, const Rational& high) {
  return ValueLadder({low, high});
}

ValuationVector ValuationVector::FromString(std::string_view text,
                                            std::size_t ladder_size) {
  std::vector<Level> levels;
  levels.reserve(text.size());
  for (char c : text) {
    const auto pos = kLevelSymbols.find(c);
    if (pos == std::string_view::npos || pos >= ladder_size) {
      throw ParseError("bad level symbol '" + std::string(1, c) + "' in '" +
                       std::string(text) + "' for a ladder of size " +
                       std::to_string(ladder_size));
    }
    levels.push_back(static_cast<Level>(pos));
  }
  return ValuationVector(std::move(levels));
}

std::size_t ValuationVector::CountLevel(Level level) const {
  return static_cast<std::size_t>(
      std::count(levels_.begin(), levels_.end(), level));
}

std::string ValuationVector::ToString() const {
  std::string out;
  out.reserve(levels_.size());
  for (Level l : levels_) out.push_back(kLevelSymbols.at(l));
  return out;
}

Allocation::Allocation(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

Allocation Allocation::FromString(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw ParseError("allocation must be a 0/1 string, got '" +
                       std::string(bits) + "'");
    }
    out.push_back(c == '1');
  }
  return Allocation(std::move(out));
}

std::size_t Allocation::Count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

bool Allocation::DominatedBy(const Allocation& other) const {
  CheckSameLength(size(), other.size(), "domination test");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > other.bits_[i]) return false;
  }
  return true;
}

std::string Allocation::ToString() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

FeasibilitySet NormalizeAntichain(std::size_t n, std::vector<Allocation> allocs) {
  for (const auto& a : allocs) CheckSameLength(a.size(), n, "antichain member");
  // Descending order puts every dominating element before anything it
  // dominates (a superset is lexicographically larger), so one forward pass
  // against the kept prefix suffices.
  std::sort(allocs.begin(), allocs.end(), std::greater<>());
  allocs.erase(std::unique(allocs.begin(), allocs.end()), allocs.end());
  FeasibilitySet out(n);
  for (auto& candidate : allocs) {
    const bool dominated =
        std::any_of(out.maximal_.begin(), out.maximal_.end(),
                    [&](const Allocation& m) { return candidate.DominatedBy(m); });
    if (!dominated) out.maximal_.push_back(std::move(candidate));
  }
  return out;
}

Environment::Environment(std::size_t n_agents, ValueLadder value_ladder,
                         FeasibilitySet feasible)
    : n(n_agents),
      ladder(std::move(value_ladder)),
      feasibility(std::move(feasible)) {
  CheckSameLength(feasibility.n(), n, "environment feasibility set");
}

Rational Welfare(const ValuationVector& v, const Allocation& x,
                 const ValueLadder& ladder) {
  CheckSameLength(v.size(), x.size(), "welfare");
  Rational total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (x[i]) total += ladder.value(v[i]);
  }
  return total;
}

bool IsFeasible(const Allocation& x, const FeasibilitySet& feasibility) {
  CheckSameLength(x.size(), feasibility.n(), "feasibility test");
  return std::any_of(feasibility.maximal().begin(), feasibility.maximal().end(),
                     [&](const Allocation& m) { return x.DominatedBy(m); });
}

Optimum OptWelfare(const ValuationVector& v, const FeasibilitySet& feasibility,
                   const ValueLadder& ladder) {
  CheckSameLength(v.size(), feasibility.n(), "opt welfare");
  Optimum best;
  best.welfare = 0;
  if (feasibility.empty()) {
    best.feasibility_empty = true;
    return best;
  }
  for (const auto& m : feasibility.maximal()) {
    Rational w = Welfare(v, m, ladder);
    if (!best.argmax || w > best.welfare) {
      best.welfare = std::move(w);
      best.argmax = m;
    }
  }
  return best;
}

bool InputSpace::Representable(std::size_t n, std::size_t k) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (size > (std::numeric_limits<std::uint64_t>::max() >> 1) / k) {
      return false;
    }
    size *= k;
  }
  return true;
}

InputSpace::InputSpace(std::size_t n, std::size_t k) : n_(n), k_(k), size_(1) {
  if (k < 2) throw ParameterError("input space needs k >= 2");
  if (!Representable(n, k)) {
    throw ParameterError("input space " + std::to_string(k) + "^" +
                         std::to_string(n) + " is too large to index");
  }
  for (std::size_t i = 0; i < n; ++i) size_ *= k;
}

ValuationVector InputSpace::Decode(std::uint64_t code) const {
  std::vector<Level> levels(n_);
  for (std::size_t i = n_; i-- > 0;) {
    levels[i] = static_cast<Level>(code % k_);
    code /= k_;
  }
  return ValuationVector(std::move(levels));
}

std::uint64_t InputSpace::Encode(const ValuationVector& v) const {
  CheckSameLength(v.size(), n_, "input encoding");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (v[i] >= k_) throw ParameterError("level outside the ladder");
    code = code * k_ + v[i];
  }
  return code;
}

bool ForEachAtDistance(const ValuationVector& v, std::size_t ladder_size,
                       std::size_t distance,
                       const std::function<bool(const ValuationVector&)>& visit) {
  const std::size_t n = v.size();
  if (distance > n) return false;
  if (distance == 0) return visit(v);

  std::vector<std::size_t> positions(distance);
  for (std::size_t j = 0; j < distance; ++j) positions[j] = j;
  // offsets[j] in [0, k-2] selects the j-th alternative level for positions[j].
  std::vector<std::size_t> offsets(distance);
  ValuationVector u = v;
  while (true) {
    std::fill(offsets.begin(), offsets.end(), 0);
    while (true) {
      for (std::size_t j = 0; j < distance; ++j) {
        const Level own = v[positions[j]];
        const Level alt = static_cast<Level>(offsets[j] < own ? offsets[j]
                                                              : offsets[j] + 1);
        u.Set(positions[j], alt);
      }
      if (visit(u)) return true;
      // Advance the odometer; the last chosen position turns fastest.
      std::size_t j = distance;
      while (j > 0) {
        --j;
        if (++offsets[j] < ladder_size - 1) break;
        offsets[j] = 0;
        if (j == 0) {
          j = distance + 1;  // wrapped
          break;
        }
      }
      if (j == distance + 1) break;
    }
    for (std::size_t p : positions) u.Set(p, v[p]);
    // Next position subset in lexicographic order.
    std::size_t j = distance;
    while (j > 0 && positions[j - 1] == n - distance + (j - 1)) --j;
    if (j == 0) return false;
    ++positions[j - 1];
    for (std::size_t t = j; t < distance; ++t) positions[t] = positions[t - 1] + 1;
  }
}

}  // namespace dcbb
