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

// Configuration-driven experiment runner behind the command-line tool.
//
// An experiment config is a document with "kind: experiment":
//
//   format: dcbb/1
//   kind: experiment
//   transformation: two          # const, two, two-plus, multi, none
//   generator: all-ones          # or "instance: <path>"
//   n: 3
//   ladder: 1, 100
//   seed: 7
//   param.m: 6                   # generator parameters
//   sweep.n: 4, 6, 8             # sweep only
//   sweep.ratio: n, 2n           # sweep only; ladder is 1, r, r^2, ...
//
// Result documents echo the effective config in a [config] section and end
// with a "duration-ms" line, the only field that varies between identical
// runs.

#ifndef DCBB_HARNESS_H_
#define DCBB_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcbb/adversaries.h"
#include "dcbb/document.h"
#include "dcbb/model.h"
#include "dcbb/rational.h"
#include "dcbb/transforms.h"
#include "dcbb/verify.h"

namespace dcbb {

// Ratio of the sweep ladder as a function of n: "n", "2n", "n^2", "2n+1",
// or a constant such as "3" or "5/2".
class RatioExpression {
 public:
  // Throws ParameterError on malformed text.
  static RatioExpression Parse(std::string_view text);

  Rational Evaluate(std::size_t n) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  bool uses_n_ = false;
  Rational coefficient_;
  unsigned power_ = 1;
  Rational offset_;
};

// Ladder 1, r, r^2, ..., r^(levels-1). Throws ParameterError unless r > 1.
ValueLadder GeometricLadder(const Rational& ratio, std::size_t levels);

struct ExperimentConfig {
  // Exactly one of instance_path and generator is set.
  std::optional<std::string> instance_path;
  std::optional<std::string> generator;
  std::map<std::string, std::string> params;  // without the "param." prefix
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<ValueLadder> ladder;

  // Unset means "none": the algorithm is verified as is.
  std::optional<TransformKind> transformation;

  std::vector<std::size_t> sweep_n;
  std::vector<RatioExpression> sweep_ratio;
  std::size_t levels = 2;
  // Sweep panel when no generator is configured.
  std::vector<std::string> panel = {"all-ones", "knapsack-greedy", "random"};
  std::size_t panel_random = 20;
  Rational threshold = Rational(1, 2);

  std::optional<std::uint64_t> budget_c;
  unsigned budget_degree = 2;
  std::optional<std::size_t> radius;
  bool check_outputs = false;

  VerifyOptions verify;
  std::optional<std::string> output;
};

// Validates identifiers, required seeds, and value syntax. Throws ParseError
// with the offending line and field.
ExperimentConfig ParseConfig(const Document& doc);
// Same, for the keys of one section (e.g. the [config] echo of a result).
ExperimentConfig ParseConfigSection(const Section& section);
// Effective config as a section; parsing it back yields the same config.
void WriteConfig(Section& section, const ExperimentConfig& config);

// Knapsack panel member for n agents: w_i = 1 + (i mod 3), capacity half the
// total weight (rounded down).
std::vector<Rational> StandardKnapsackWeights(std::size_t n);
Rational StandardKnapsackCapacity(const std::vector<Rational>& weights);

// Names accepted by InstantiateGenerator.
const std::vector<std::string>& GeneratorNames();

// Builds a named generator. `n` sizes the generators that take an agent
// count (all-ones, knapsack-*, random); the adversaries read their sizes
// from `params`. Facts specific to the generator (thresholds, chains,
// permutations) are appended to `facts` when given.
GeneratedInstance InstantiateGenerator(
    const std::string& name, const std::map<std::string, std::string>& params,
    std::optional<std::uint64_t> seed, std::optional<std::size_t> n,
    const ValueLadder& ladder, Section* facts = nullptr);

// Generator instance scaled to n agents for sweeps: the block adversary uses
// L1 = n-1, L2 = floor((n-1)/2), ones = L2-1, L3 = 1; the Hamming adversary
// uses m = n/2.
GeneratedInstance InstantiateScaled(const ExperimentConfig& config,
                                    const std::string& name, std::size_t n,
                                    const ValueLadder& ladder,
                                    std::uint64_t seed);

struct QueryStats {
  std::uint64_t max_log_length = 0;
  std::size_t max_radius = 0;
  std::uint64_t total_queries = 0;
};

struct CellResult {
  std::size_t n = 0;
  std::string ratio;  // empty outside sweeps
  std::string algorithm;
  std::string ladder;  // formatted
  MonotonicityReport monotonicity;
  WelfareReport welfare;
  QueryStats queries;
  bool meets_threshold = false;
};

// Runs the configured transformation over `instance` and verifies it.
CellResult RunCell(const ExperimentConfig& config, const GeneratedInstance& instance);

struct CommandResult {
  Document document;
  // 0 success, 1 invariant failure.
  int exit_code = 0;
};

CommandResult RunVerify(const ExperimentConfig& config);
CommandResult RunSweep(const ExperimentConfig& config);
// Refuses (exit code 1, report attached) if the configured rule is not
// monotone.
CommandResult RunPayments(const ExperimentConfig& config, std::string_view input);
// `config` supplies generator, params, seed, n and ladder.
CommandResult RunAdversary(const ExperimentConfig& config);
CommandResult RunOpt(const ExperimentConfig& config, std::string_view input);

// Serialized document with every "duration-ms" line removed.
std::string WithoutDuration(const Document& doc);

}  // namespace dcbb

#endif  // DCBB_HARNESS_H_
