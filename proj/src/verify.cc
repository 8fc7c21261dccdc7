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

#include "dcbb/verify.h"

#include <algorithm>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "dcbb/errors.h"

namespace dcbb {
namespace {

bool Enumerable(const Environment& env, const VerifyOptions& options) {
  const std::size_t k = env.ladder.size();
  if (!InputSpace::Representable(env.n, k)) return false;
  return InputSpace(env.n, k).size() <= options.enumeration_bound;
}

ValuationVector RandomInput(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<Level> levels(n);
  for (auto& l : levels) l = static_cast<Level>(rng() % k);
  return ValuationVector(std::move(levels));
}

// Visits (input, rule(input)) for every input, or for `samples` seeded random
// inputs past the bound. Returns whether it sampled.
template <class Visit>
bool ForEachEvaluated(const AllocationRule& rule, const Environment& env,
                      const VerifyOptions& options, Visit visit) {
  const std::size_t k = env.ladder.size();
  if (Enumerable(env, options)) {
    InputSpace space(env.n, k);
    const auto table = Tabulate(rule, space, options.workers);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      visit(space.Decode(code), table[code]);
    }
    return false;
  }
  std::mt19937_64 rng(options.seed);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    ValuationVector v = RandomInput(env.n, k, rng);
    Allocation x = rule(v);
    visit(v, x);
  }
  return true;
}

}  // namespace

std::vector<Allocation> Tabulate(const AllocationRule& rule,
                                 const InputSpace& space, unsigned workers) {
  std::vector<Allocation> table(space.size());
  workers = std::max(1u, workers);
  if (workers == 1 || space.size() < 2 * workers) {
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      table[code] = rule(space.Decode(code));
    }
    return table;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (space.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min<std::uint64_t>(space.size(), begin + chunk);
    threads.emplace_back([&, begin, end] {
      try {
        for (std::uint64_t code = begin; code < end; ++code) {
          table[code] = rule(space.Decode(code));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return table;
}

MonotonicityReport CheckMonotone(const AllocationRule& rule,
                                 const Environment& env,
                                 const VerifyOptions& options) {
  const std::size_t k = env.ladder.size();
  MonotonicityReport report;
  report.seed = options.seed;
  if (Enumerable(env, options)) {
    InputSpace space(env.n, k);
    const auto table = Tabulate(rule, space, options.workers);
    std::uint64_t stride = 1;
    std::vector<std::uint64_t> strides(env.n);
    for (std::size_t i = env.n; i-- > 0;) {
      strides[i] = stride;
      stride *= k;
    }
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      const ValuationVector v = space.Decode(code);
      for (std::size_t i = 0; i < env.n; ++i) {
        for (Level high = v[i] + 1; high < k; ++high) {
          ++report.checked_pairs;
          const std::uint64_t other = code + (high - v[i]) * strides[i];
          if (table[code][i] && !table[other][i]) {
            report.violations.push_back({v, i, v[i], high, true, false});
          }
        }
      }
    }
  } else {
    report.sampled = true;
    std::mt19937_64 rng(options.seed);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      ValuationVector v = RandomInput(env.n, k, rng);
      const std::size_t i = rng() % env.n;
      Level a = static_cast<Level>(rng() % k);
      Level b = static_cast<Level>(rng() % (k - 1));
      if (b >= a) ++b;
      const Level low = std::min(a, b), high = std::max(a, b);
      v.Set(i, low);
      ++report.checked_pairs;
      const bool bit_low = rule(v)[i];
      const bool bit_high = rule(v.With(i, high))[i];
      if (bit_low && !bit_high) {
        report.violations.push_back({v, i, low, high, true, false});
      }
    }
    std::sort(report.violations.begin(), report.violations.end());
    report.violations.erase(
        std::unique(report.violations.begin(), report.violations.end()),
        report.violations.end());
  }
  return report;
}

WelfareReport ComputeWelfareReport(const AllocationRule& rule,
                                   const AllocationRule& original,
                                   const Environment& env,
                                   const VerifyOptions& options) {
  WelfareReport report;
  report.pointwise_min_fraction = 1;
  report.sum_welfare_rule = 0;
  report.sum_welfare_original = 0;
  report.approx_ratio_rule = 1;
  report.approx_ratio_original = 1;

  // The original is evaluated over the same inputs as the rule: tabulated
  // when enumerating, and at the same seeded samples otherwise.
  std::vector<std::pair<ValuationVector, Allocation>> rule_values;
  report.sampled = ForEachEvaluated(rule, env, options,
                                    [&](const ValuationVector& v, const Allocation& x) {
                                      rule_values.emplace_back(v, x);
                                    });
  std::vector<Allocation> original_values;
  original_values.reserve(rule_values.size());
  if (!report.sampled) {
    original_values = Tabulate(original, InputSpace(env.n, env.ladder.size()),
                               options.workers);
  } else {
    for (const auto& [v, x] : rule_values) original_values.push_back(original(v));
  }

  for (std::size_t idx = 0; idx < rule_values.size(); ++idx) {
    const auto& [v, x] = rule_values[idx];
    const Rational w_rule = Welfare(v, x, env.ladder);
    const Rational w_orig = Welfare(v, original_values[idx], env.ladder);
    ++report.total_inputs;
    report.sum_welfare_rule += w_rule;
    report.sum_welfare_original += w_orig;
    if (w_rule >= w_orig) ++report.full_welfare_count;
    if (w_orig == 0) {
      ++report.zero_welfare_inputs;
    } else {
      Rational fraction = w_rule / w_orig;
      if (fraction > 1) fraction = 1;
      if (fraction < report.pointwise_min_fraction) {
        report.pointwise_min_fraction = fraction;
      }
    }
    const Optimum opt = OptWelfare(v, env.feasibility, env.ladder);
    if (opt.welfare > 0) {
      const Rational r_rule = w_rule / opt.welfare;
      const Rational r_orig = w_orig / opt.welfare;
      if (r_rule < report.approx_ratio_rule) report.approx_ratio_rule = r_rule;
      if (r_orig < report.approx_ratio_original) report.approx_ratio_original = r_orig;
    }
  }
  return report;
}

Rational ApproxRatio(const AllocationRule& rule, const Environment& env,
                     const VerifyOptions& options) {
  Rational ratio = 1;
  ForEachEvaluated(rule, env, options,
                   [&](const ValuationVector& v, const Allocation& x) {
                     const Optimum opt = OptWelfare(v, env.feasibility, env.ladder);
                     if (opt.welfare == 0) return;
                     const Rational r = Welfare(v, x, env.ladder) / opt.welfare;
                     if (r < ratio) ratio = r;
                   });
  return ratio;
}

Rational FractionFullWelfare(const AllocationRule& rule,
                             const AllocationRule& original,
                             const Environment& env,
                             const VerifyOptions& options) {
  return ComputeWelfareReport(rule, original, env, options).fraction_full_welfare();
}

PaymentResult MyersonPayments(const AllocationRule& rule,
                              const ValuationVector& v,
                              const ValueLadder& ladder) {
  PaymentResult out;
  out.allocation = rule(v);
  if (out.allocation.size() != v.size()) {
    throw DimensionError("rule returned an allocation of the wrong length");
  }
  out.payments.assign(v.size(), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= ladder.size()) throw ParameterError("level outside the ladder");
    // Bits of agent i at each of its levels up to the bid.
    std::vector<bool> wins(v[i] + 1);
    for (Level j = 0; j < v[i]; ++j) wins[j] = rule(v.With(i, j))[i];
    wins[v[i]] = out.allocation[i];
    if (!out.allocation[i]) {
      if (std::find(wins.begin(), wins.end(), true) != wins.end()) {
        out.consistent = false;
      }
      continue;
    }
    const auto critical = static_cast<Level>(
        std::find(wins.begin(), wins.end(), true) - wins.begin());
    out.payments[i] = ladder.value(critical);
    for (std::size_t j = critical; j <= v[i]; ++j) {
      if (!wins[j]) out.consistent = false;
    }
  }
  return out;
}

}  // namespace dcbb
