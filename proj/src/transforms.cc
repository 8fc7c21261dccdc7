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

#include <string>

#include "dcbb/errors.h"

namespace dcbb {
namespace {

void RequireLadderSize(const InstrumentedBlackBox& bb, std::size_t min_k,
                       std::size_t max_k, const char* name) {
  const std::size_t k = bb.environment().ladder.size();
  if (k < min_k || k > max_k) {
    throw ParameterError(std::string(name) + " does not support a ladder of " +
                         std::to_string(k) + " values");
  }
}

void RequireLength(const InstrumentedBlackBox& bb, const ValuationVector& v) {
  if (v.size() != bb.environment().n) {
    throw DimensionError("transformation input has " + std::to_string(v.size()) +
                         " agents, environment has " +
                         std::to_string(bb.environment().n));
  }
}

bool HasOneAtLevel(const Allocation& x, const ValuationVector& v, Level level) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && v[i] == level) return true;
  }
  return false;
}

// Class used by the transformation schedules: the all-zero allocation counts
// as a lowest-class allocation.
Level ScheduleClass(const Allocation& x, const ValuationVector& v,
                    const ValueLadder& ladder) {
  return ClassifyAllocation(x, v, ladder).value_or(0);
}

}  // namespace

std::string_view TransformId(TransformKind kind) {
  switch (kind) {
    case TransformKind::kConstant:
      return "const";
    case TransformKind::kTwoValue:
      return "two";
    case TransformKind::kTwoValuePlus:
      return "two-plus";
    case TransformKind::kMultiValue:
      return "multi";
  }
  return "?";
}

TransformKind ParseTransformKind(std::string_view id) {
  for (auto kind : {TransformKind::kConstant, TransformKind::kTwoValue,
                    TransformKind::kTwoValuePlus, TransformKind::kMultiValue}) {
    if (TransformId(kind) == id) return kind;
  }
  throw ParameterError("unknown transformation '" + std::string(id) + "'");
}

std::optional<Level> ClassifyAllocation(const Allocation& x,
                                        const ValuationVector& v,
                                        const ValueLadder& ladder) {
  if (x.size() != v.size()) throw DimensionError("classify: length mismatch");
  std::optional<Level> best;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    if (v[i] >= ladder.size()) throw ParameterError("level outside the ladder");
    if (!best || v[i] > *best) best = v[i];
  }
  return best;
}

bool HigherThan(const Allocation& x, const Allocation& y,
                const ValuationVector& v, const ValueLadder& ladder) {
  if (x.size() != v.size() || y.size() != v.size()) {
    throw DimensionError("higher-than: length mismatch");
  }
  std::vector<std::size_t> cx(ladder.size()), cy(ladder.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (x[i]) ++cx.at(v[i]);
    if (y[i]) ++cy.at(v[i]);
  }
  for (std::size_t level = ladder.size(); level-- > 0;) {
    if (cx[level] != cy[level]) return cx[level] > cy[level];
  }
  return false;
}

Allocation ZeroBelow(const Allocation& x, const ValuationVector& v, Level level) {
  if (x.size() != v.size()) throw DimensionError("zero-out: length mismatch");
  Allocation out = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (v[i] < level) out.Set(i, false);
  }
  return out;
}

Allocation ConstantAllocation(InstrumentedBlackBox& bb, const ValuationVector& v) {
  RequireLength(bb, v);
  return bb.Query(ValuationVector::Uniform(v.size(), 0));
}

Allocation TwoValue(InstrumentedBlackBox& bb, const ValuationVector& v) {
  RequireLadderSize(bb, 2, 2, "two-value transformation");
  RequireLength(bb, v);
  constexpr Level kHigh = 1;
  Allocation current = bb.Query(v);
  if (HasOneAtLevel(current, v, kHigh)) return ZeroBelow(current, v, kHigh);

  std::optional<Allocation> adopted;
  for (std::size_t distance = 1; distance <= 2 && !adopted; ++distance) {
    ForEachAtDistance(v, 2, distance, [&](const ValuationVector& u) {
      Allocation candidate = bb.Query(u);
      if (!HasOneAtLevel(candidate, v, kHigh)) return false;
      adopted = std::move(candidate);
      return true;
    });
  }
  if (adopted) return ZeroBelow(*adopted, v, kHigh);
  return current;
}

TwoValuePlusState::TwoValuePlusState(InstrumentedBlackBox& bb)
    : bb_(bb), high_(1) {
  RequireLadderSize(bb, 2, 2, "two-value-plus transformation");
}

std::size_t TwoValuePlusState::HighCount(const Allocation& x,
                                         const ValuationVector& u) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) count += x[i] && u[i] == high_;
  return count;
}

const Allocation& TwoValuePlusState::Original(const ValuationVector& u) {
  auto it = original_.find(u);
  if (it == original_.end()) it = original_.emplace(u, bb_.Query(u)).first;
  return it->second;
}

const TwoValuePlusState::Entry& TwoValuePlusState::AfterUpgrade(
    const ValuationVector& u) {
  if (auto it = upgraded_.find(u); it != upgraded_.end()) return it->second;
  const Allocation original = Original(u);
  Entry entry{original, Stage::kOriginal};
  const std::size_t own = HighCount(original, u);
  if (own > 0) {
    ForEachAtDistance(u, 2, 1, [&](const ValuationVector& w) {
      const Allocation& candidate = Original(w);
      if (HighCount(candidate, u) <= own) return false;
      entry = {candidate, Stage::kUpgraded};
      return true;
    });
  }
  return upgraded_.emplace(u, std::move(entry)).first->second;
}

const TwoValuePlusState::Entry& TwoValuePlusState::Provisional(
    const ValuationVector& u) {
  if (auto it = provisional_.find(u); it != provisional_.end()) {
    return it->second;
  }
  Entry entry = AfterUpgrade(u);
  for (std::size_t distance = 1; distance <= 2; ++distance) {
    if (HighCount(entry.allocation, u) > 0) break;
    ForEachAtDistance(u, 2, distance, [&](const ValuationVector& w) {
      const Entry& candidate = AfterUpgrade(w);
      if (HighCount(candidate.allocation, u) == 0) return false;
      entry = {candidate.allocation, Stage::kUpgraded};
      return true;
    });
  }
  if (HighCount(entry.allocation, u) > HighCount(Original(u), u)) {
    entry = {ZeroBelow(entry.allocation, u, high_), Stage::kZeroed};
  }
  return provisional_.emplace(u, std::move(entry)).first->second;
}

Allocation TwoValuePlusState::Final(const ValuationVector& v) {
  Allocation out = Provisional(v).allocation;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == high_ || !out[i]) continue;
    const ValuationVector raised = v.With(i, high_);
    if (!Provisional(raised).allocation[i]) out.Set(i, false);
  }
  return out;
}

Allocation TwoValuePlus(InstrumentedBlackBox& bb, const ValuationVector& v) {
  RequireLength(bb, v);
  TwoValuePlusState state(bb);
  return state.Final(v);
}

std::vector<LadderStep> MultiValueSteps(std::size_t k) {
  std::vector<LadderStep> steps;
  steps.push_back({std::nullopt, std::nullopt});
  if (k >= 2) steps.push_back({Level{0}, Level{1}});
  for (std::size_t t = 2; t < k; ++t) {
    const auto target = static_cast<Level>(t);
    steps.push_back({std::nullopt, target});
    if (t == 2) {
      // The a_3 block is listed top-down; later blocks bottom-up.
      steps.push_back({Level{1}, target});
      steps.push_back({Level{0}, target});
    } else {
      for (std::size_t s = 0; s < t; ++s) {
        steps.push_back({static_cast<Level>(s), target});
      }
    }
  }
  return steps;
}

Allocation MultiValue(InstrumentedBlackBox& bb, const ValuationVector& v) {
  const std::size_t k = bb.environment().ladder.size();
  if (k < 3) {
    throw ParameterError("multi-value transformation needs at least 3 values; "
                         "use the two-value transformation");
  }
  RequireLength(bb, v);
  const ValueLadder& ladder = bb.environment().ladder;
  const Level top = ladder.top();

  std::unordered_map<ValuationVector, Allocation> answers;
  auto query = [&](const ValuationVector& u) -> const Allocation& {
    auto it = answers.find(u);
    if (it == answers.end()) it = answers.emplace(u, bb.Query(u)).first;
    return it->second;
  };

  Allocation current = query(v);
  Level cls = ScheduleClass(current, v, ladder);
  const auto steps = MultiValueSteps(k);
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const LadderStep& step = steps[j];
    if (step.source) {
      if (cls != *step.source) continue;
    } else if (step.target) {
      if (cls >= *step.target) continue;
    } else if (cls == top) {
      continue;
    }
    ForEachAtDistance(v, k, j + 1, [&](const ValuationVector& u) {
      const Allocation& candidate = query(u);
      const Level cc = ScheduleClass(candidate, v, ladder);
      const bool match = step.target ? cc == *step.target : cc > cls;
      if (!match) return false;
      current = candidate;
      cls = cc;
      return true;
    });
  }
  return ZeroBelow(current, v, cls);
}

Allocation ApplyTransform(TransformKind kind, InstrumentedBlackBox& bb,
                          const ValuationVector& v) {
  switch (kind) {
    case TransformKind::kConstant:
      return ConstantAllocation(bb, v);
    case TransformKind::kTwoValue:
      return TwoValue(bb, v);
    case TransformKind::kTwoValuePlus:
      return TwoValuePlus(bb, v);
    case TransformKind::kMultiValue:
      return MultiValue(bb, v);
  }
  throw ParameterError("unknown transformation kind");
}

AllocationRule BindTransform(TransformKind kind, Algorithm algorithm,
                             BlackBoxOptions options) {
  return [kind, algorithm = std::move(algorithm),
          options = std::move(options)](const ValuationVector& v) {
    BlackBoxOptions local = options;
    if (local.hamming_radius && !local.hamming_center) local.hamming_center = v;
    InstrumentedBlackBox bb(algorithm, std::move(local));
    return ApplyTransform(kind, bb, v);
  };
}

}  // namespace dcbb
