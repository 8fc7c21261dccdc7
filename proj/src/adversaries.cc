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

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "dcbb/errors.h"

namespace dcbb {
namespace {

constexpr std::size_t kMaxFakes = 1'000'000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Uniform index in [0, bound) from raw mt19937_64 output. The modulo bias is
// negligible for the bounds used here and keeps results identical across
// standard libraries.
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

void FisherYates(std::vector<std::size_t>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformIndex(rng, i)]);
  }
}

std::vector<std::size_t> SampleSorted(std::size_t population, std::size_t count,
                                      std::mt19937_64& rng) {
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), 0);
  FisherYates(pool, rng);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

template <class T>
T Permute(const T& canonical, const std::vector<std::size_t>& permutation);

template <>
Allocation Permute(const Allocation& canonical,
                   const std::vector<std::size_t>& permutation) {
  Allocation out = Allocation::Zeros(canonical.size());
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    out.Set(permutation[i], canonical[i]);
  }
  return out;
}

template <>
ValuationVector Permute(const ValuationVector& canonical,
                        const std::vector<std::size_t>& permutation) {
  ValuationVector out = ValuationVector::Uniform(canonical.size(), 0);
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    out.Set(permutation[i], canonical[i]);
  }
  return out;
}

std::uint64_t Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMaxFakes * 1000) return r;
  }
  return r;
}

// All k-subsets of [0, n) in lexicographic order.
std::vector<std::vector<std::size_t>> Combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    std::size_t j = k;
    while (j > 0 && c[j - 1] == n - k + (j - 1)) --j;
    if (j == 0) break;
    ++c[j - 1];
    for (std::size_t t = j; t < k; ++t) c[t] = c[t - 1] + 1;
  }
  return out;
}

std::shared_ptr<const Environment> MakeEnvironment(std::size_t n,
                                                   const ValueLadder& ladder,
                                                   std::vector<Allocation> allocs) {
  return std::make_shared<const Environment>(
      n, ladder, NormalizeAntichain(n, std::move(allocs)));
}

GeneratedInstance MakeInstance(std::string generator,
                               std::shared_ptr<const Environment> env,
                               RuleSpec rule) {
  Algorithm algorithm = BuildAlgorithm(env, rule, generator);
  return GeneratedInstance{std::move(generator), std::move(env), std::move(rule),
                           std::move(algorithm)};
}

Allocation KnapsackGreedy(const ValuationVector& v, const KnapsackRule& rule,
                          const ValueLadder& ladder) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Rational> density(n);
  for (std::size_t i = 0; i < n; ++i) {
    density[i] = ladder.value(v[i]) / rule.weights[i];
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return density[a] > density[b];
  });
  Allocation out = Allocation::Zeros(n);
  Rational used = 0;
  for (std::size_t i : order) {
    if (used + rule.weights[i] <= rule.capacity) {
      used += rule.weights[i];
      out.Set(i, true);
    }
  }
  return out;
}

std::vector<Allocation> KnapsackMaximal(const std::vector<Rational>& weights,
                                        const Rational& capacity) {
  const std::size_t n = weights.size();
  std::vector<Allocation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) total += weights[i];
    }
    if (total > capacity) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < n && maximal; ++i) {
      if (!(mask >> i & 1) && total + weights[i] <= capacity) maximal = false;
    }
    if (!maximal) continue;
    Allocation x = Allocation::Zeros(n);
    for (std::size_t i = 0; i < n; ++i) x.Set(i, mask >> i & 1);
    out.push_back(std::move(x));
  }
  return out;
}

std::uint64_t HashInput(std::uint64_t seed, const ValuationVector& v) {
  std::uint64_t h = SplitMix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (Level l : v.levels()) h = SplitMix64(h ^ (std::uint64_t{l} + 1));
  return SplitMix64(h ^ v.size());
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string_view KnapsackPolicyId(KnapsackPolicy policy) {
  return policy == KnapsackPolicy::kGreedyDensity ? "greedy" : "optimal";
}

KnapsackPolicy ParseKnapsackPolicy(std::string_view id) {
  if (id == "greedy") return KnapsackPolicy::kGreedyDensity;
  if (id == "optimal") return KnapsackPolicy::kBruteForceOptimal;
  throw ParameterError("unknown knapsack policy '" + std::string(id) + "'");
}

Algorithm BuildAlgorithm(std::shared_ptr<const Environment> environment,
                         const RuleSpec& rule, std::string name) {
  const std::size_t n = environment->n;
  auto check_len = [n](const Allocation& x) {
    if (x.size() != n) throw DimensionError("rule allocation has wrong length");
  };
  AllocationRule fn = std::visit(
      Overloaded{
          [&](const CaseTableRule& r) -> AllocationRule {
            check_len(r.fallback);
            std::unordered_map<ValuationVector, Allocation> table;
            for (const auto& [input, output] : r.cases) {
              if (input.size() != n) throw DimensionError("case input has wrong length");
              check_len(output);
              table.emplace(input, output);
            }
            return [table = std::move(table), fallback = r.fallback](
                       const ValuationVector& v) {
              auto it = table.find(v);
              return it == table.end() ? fallback : it->second;
            };
          },
          [&](const ThresholdRule& r) -> AllocationRule {
            check_len(r.at_most);
            check_len(r.above);
            return [r](const ValuationVector& v) {
              return v.CountLevel(r.level) <= r.threshold ? r.at_most : r.above;
            };
          },
          [&](const TruthTableRule& r) -> AllocationRule {
            InputSpace space(n, environment->ladder.size());
            if (r.table.size() != space.size()) {
              throw DimensionError("truth table has " + std::to_string(r.table.size()) +
                                   " rows, expected " + std::to_string(space.size()));
            }
            for (const auto& x : r.table) check_len(x);
            return [space, table = r.table](const ValuationVector& v) {
              return table[space.Encode(v)];
            };
          },
          [&](const KnapsackRule& r) -> AllocationRule {
            if (r.weights.size() != n) throw DimensionError("knapsack weights length");
            const ValueLadder& ladder = environment->ladder;
            if (r.policy == KnapsackPolicy::kGreedyDensity) {
              return [r, ladder](const ValuationVector& v) {
                return KnapsackGreedy(v, r, ladder);
              };
            }
            return [env = environment](const ValuationVector& v) {
              auto best = OptWelfare(v, env->feasibility, env->ladder);
              return best.argmax ? *best.argmax : Allocation::Zeros(env->n);
            };
          },
          [&](const SeededRandomRule& r) -> AllocationRule {
            return [seed = r.seed, env = environment](const ValuationVector& v) {
              const auto& maximal = env->feasibility.maximal();
              if (maximal.empty()) return Allocation::Zeros(env->n);
              std::uint64_t h = HashInput(seed, v);
              Allocation out = maximal[h % maximal.size()];
              h = SplitMix64(h);
              if (h & 1) return out;
              for (std::size_t i = 0; i < out.size(); ++i) {
                if (out[i] && (SplitMix64(h + i + 1) & 1)) out.Set(i, false);
              }
              return out;
            };
          },
      },
      rule);
  return Algorithm(std::move(environment), std::move(fn), std::move(name));
}

Thm1Instance GenerateThm1(std::size_t m, std::uint64_t seed,
                          const ValueLadder& ladder) {
  if (m < 2 || m % 2 != 0) {
    throw ParameterError("thm1 needs an even m >= 2, got " + std::to_string(m));
  }
  if (ladder.size() != 2) throw ParameterError("thm1 needs a two-value ladder");
  const std::size_t fake_ones = m / 2 - 1;
  if (Binomial(2 * m, fake_ones) > kMaxFakes) {
    throw ParameterError("thm1 fake family too large for m = " + std::to_string(m));
  }
  const std::size_t n = 4 * m;
  std::mt19937_64 rng(seed);

  Thm1Instance out;
  out.m = m;
  out.seed = seed;

  std::vector<Level> b1(n, 1);
  for (std::size_t i = 3 * m; i < n; ++i) b1[i] = 0;
  out.canonical_special_input = ValuationVector(std::move(b1));

  Allocation c = Allocation::Zeros(n);
  for (std::size_t p : SampleSorted(2 * m, m + 1, rng)) c.Set(p, true);
  for (std::size_t i = 3 * m; i < n; ++i) c.Set(i, true);
  out.canonical_special_allocation = c;

  Allocation d = Allocation::Zeros(n);
  for (std::size_t i = 2 * m; i < n; ++i) d.Set(i, true);
  out.canonical_default_allocation = d;

  for (const auto& combo : Combinations(2 * m, fake_ones)) {
    Allocation fake = Allocation::Zeros(n);
    for (std::size_t p : combo) fake.Set(p, true);
    for (std::size_t i = 3 * m; i < n; ++i) fake.Set(i, true);
    out.canonical_fakes.push_back(std::move(fake));
  }

  // Shuffle the last 3m/2 positions.
  const std::size_t fixed = n - 3 * m / 2;
  std::vector<std::size_t> tail(n - fixed);
  std::iota(tail.begin(), tail.end(), fixed);
  FisherYates(tail, rng);
  out.permutation.resize(n);
  std::iota(out.permutation.begin(), out.permutation.begin() + fixed, 0);
  std::copy(tail.begin(), tail.end(), out.permutation.begin() + fixed);

  out.special_input = Permute(out.canonical_special_input, out.permutation);
  out.special_allocation = Permute(out.canonical_special_allocation, out.permutation);
  out.default_allocation = Permute(out.canonical_default_allocation, out.permutation);
  for (const auto& f : out.canonical_fakes) {
    out.fakes.push_back(Permute(f, out.permutation));
  }

  std::vector<Allocation> allocs = out.fakes;
  allocs.push_back(out.special_allocation);
  allocs.push_back(out.default_allocation);
  auto env = MakeEnvironment(n, ladder, std::move(allocs));
  CaseTableRule rule{{{out.special_input, out.special_allocation}},
                     out.default_allocation};
  out.instance = MakeInstance("thm1", std::move(env), std::move(rule));
  return out;
}

BlockAdversaryInstance GenerateBlockAdversary(const BlockParams& p,
                                              const ValueLadder& ladder) {
  if (!(p.first_block > p.middle_block && p.middle_block > p.ones &&
        p.ones > p.last_block && p.last_block >= 1)) {
    throw ParameterError(
        "block adversary needs L1 > L2 > ones > L3 >= 1, got L1=" +
        std::to_string(p.first_block) + " L2=" + std::to_string(p.middle_block) +
        " ones=" + std::to_string(p.ones) + " L3=" + std::to_string(p.last_block));
  }
  if (ladder.size() != 2) throw ParameterError("block adversary needs a two-value ladder");
  const std::size_t n = p.first_block + p.last_block;
  const std::size_t middle_start = p.first_block - p.middle_block;

  BlockAdversaryInstance out;
  out.first_block = p.first_block;
  out.middle_block = p.middle_block;
  out.last_block = p.last_block;
  out.ones = p.ones;
  if (p.explicit_positions) {
    out.chosen_positions = *p.explicit_positions;
    std::sort(out.chosen_positions.begin(), out.chosen_positions.end());
    const bool unique = std::adjacent_find(out.chosen_positions.begin(),
                                           out.chosen_positions.end()) ==
                        out.chosen_positions.end();
    if (out.chosen_positions.size() != p.ones || !unique ||
        (!out.chosen_positions.empty() &&
         out.chosen_positions.back() >= p.middle_block)) {
      throw ParameterError("explicit positions must be " + std::to_string(p.ones) +
                           " distinct offsets below " + std::to_string(p.middle_block));
    }
  } else {
    std::mt19937_64 rng(p.seed);
    out.chosen_positions = SampleSorted(p.middle_block, p.ones, rng);
  }

  std::vector<Level> b1(n, 1);
  for (std::size_t i = middle_start; i < p.first_block; ++i) b1[i] = 0;
  const ValuationVector special(std::move(b1));

  out.special_allocation = Allocation::Zeros(n);
  for (std::size_t off : out.chosen_positions) {
    out.special_allocation.Set(middle_start + off, true);
  }
  out.default_allocation = Allocation::Zeros(n);
  for (std::size_t i = p.first_block; i < n; ++i) out.default_allocation.Set(i, true);

  const std::size_t steps = std::min(p.chain_steps.value_or(p.ones), p.middle_block);
  ValuationVector b = special;
  out.chain.push_back(b);
  for (std::size_t i = 0; i < steps; ++i) {
    b.Set(middle_start + i, 1);
    out.chain.push_back(b);
  }

  auto env = MakeEnvironment(n, ladder, {out.special_allocation, out.default_allocation});
  CaseTableRule rule{{{special, out.special_allocation}}, out.default_allocation};
  out.instance = MakeInstance("block", std::move(env), std::move(rule));
  return out;
}

HammingAdversaryInstance GenerateHammingAdversary(std::size_t m, std::size_t f,
                                                  const ValueLadder& ladder) {
  if (m < 1 || f > m) {
    throw ParameterError("hamming adversary needs m >= 1 and f <= m");
  }
  if (ladder.size() != 2) throw ParameterError("hamming adversary needs a two-value ladder");
  const std::size_t n = 2 * m;
  Allocation low_half = Allocation::Zeros(n), high_half = Allocation::Zeros(n);
  for (std::size_t i = 0; i < m; ++i) {
    high_half.Set(i, true);
    low_half.Set(m + i, true);
  }
  HammingAdversaryInstance out;
  out.m = m;
  out.f = f;
  out.threshold = m + f;
  auto env = MakeEnvironment(n, ladder, {low_half, high_half});
  ThresholdRule rule{ladder.top(), out.threshold, low_half, high_half};
  out.instance = MakeInstance("hamming", std::move(env), std::move(rule));
  return out;
}

GeneratedInstance GenerateAllOnes(std::size_t n, const ValueLadder& ladder) {
  if (n < 1) throw ParameterError("all-ones needs n >= 1");
  auto env = MakeEnvironment(n, ladder, {Allocation::Ones(n)});
  return MakeInstance("all-ones", std::move(env),
                      CaseTableRule{{}, Allocation::Ones(n)});
}

GeneratedInstance GenerateKnapsack(std::vector<Rational> weights,
                                   Rational capacity, KnapsackPolicy policy,
                                   const ValueLadder& ladder) {
  const std::size_t n = weights.size();
  if (n < 1) throw ParameterError("knapsack needs at least one agent");
  if (capacity < 0) throw ParameterError("knapsack capacity must be >= 0");
  for (const auto& w : weights) {
    if (w <= 0) throw ParameterError("knapsack weights must be positive");
  }
  if (n > 20) throw ParameterError("knapsack enumeration limited to 20 agents");
  if (policy == KnapsackPolicy::kBruteForceOptimal && n > 16) {
    throw ParameterError("brute-force knapsack limited to 16 agents");
  }
  auto env = MakeEnvironment(n, ladder, KnapsackMaximal(weights, capacity));
  return MakeInstance(
      policy == KnapsackPolicy::kGreedyDensity ? "knapsack-greedy" : "knapsack-optimal",
      std::move(env), KnapsackRule{std::move(weights), std::move(capacity), policy});
}

FeasibilitySet GenerateRandomFeasibility(std::size_t n, std::uint64_t seed,
                                         std::size_t candidates) {
  std::mt19937_64 rng(SplitMix64(seed));
  if (candidates == 0) candidates = 2 + UniformIndex(rng, 3);
  std::vector<Allocation> allocs;
  for (std::size_t c = 0; c < candidates; ++c) {
    Allocation x = Allocation::Zeros(n);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 64 == 0) bits = rng();
      x.Set(i, bits >> (i % 64) & 1);
    }
    allocs.push_back(std::move(x));
  }
  return NormalizeAntichain(n, std::move(allocs));
}

GeneratedInstance GenerateRandomAlgorithm(
    std::shared_ptr<const Environment> environment, std::uint64_t seed) {
  return MakeInstance("random", std::move(environment), SeededRandomRule{seed});
}

GeneratedInstance GenerateRandom(std::size_t n, const ValueLadder& ladder,
                                 std::uint64_t seed) {
  if (n < 1) throw ParameterError("random generator needs n >= 1");
  auto env = std::make_shared<const Environment>(n, ladder,
                                                 GenerateRandomFeasibility(n, seed));
  return GenerateRandomAlgorithm(std::move(env), seed);
}

}  // namespace dcbb
