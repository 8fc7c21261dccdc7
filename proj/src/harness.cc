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

#include "dcbb/harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "dcbb/blackbox.h"
#include "dcbb/errors.h"
#include "dcbb/serialize.h"

namespace dcbb {
namespace {

bool ParseUnsignedText(std::string_view text, std::uint64_t& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

std::uint64_t ConfigUnsigned(const Entry& e) {
  std::uint64_t out = 0;
  if (!ParseUnsignedText(e.value, out)) {
    throw ParseError("expected a non-negative integer, got '" + e.value + "'",
                     e.line, e.key);
  }
  return out;
}

bool ConfigBool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ParseError("expected true or false, got '" + e.value + "'", e.line, e.key);
}

std::optional<std::size_t> ParamSize(const std::map<std::string, std::string>& params,
                                     const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  std::uint64_t out = 0;
  if (!ParseUnsignedText(it->second, out)) {
    throw ParameterError("param." + key + ": expected a non-negative integer, got '" +
                         it->second + "'");
  }
  return static_cast<std::size_t>(out);
}

std::size_t RequireParamSize(const std::map<std::string, std::string>& params,
                             const std::string& key, const std::string& generator) {
  auto value = ParamSize(params, key);
  if (!value) throw ParameterError("generator '" + generator + "' needs param." + key);
  return *value;
}

std::vector<std::size_t> ParamList(const std::map<std::string, std::string>& params,
                                   const std::string& key) {
  std::vector<std::size_t> out;
  for (const auto& item : SplitList(params.at(key))) {
    std::uint64_t v = 0;
    if (!ParseUnsignedText(item, v)) {
      throw ParameterError("param." + key + ": bad list item '" + item + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::uint64_t RequireSeed(std::optional<std::uint64_t> seed, const std::string& generator) {
  if (!seed) throw ParameterError("generator '" + generator + "' needs a seed");
  return *seed;
}

std::size_t RequireN(std::optional<std::size_t> n, const std::string& generator) {
  if (!n) throw ParameterError("generator '" + generator + "' needs n");
  return *n;
}

bool IsRandomized(const std::string& generator) {
  return generator == "random" || generator == "thm1" || generator == "block";
}

std::string JoinSizes(const std::vector<std::size_t>& values) {
  std::vector<std::string> items;
  for (auto v : values) items.push_back(std::to_string(v));
  return JoinList(items);
}

ValuationVector ParseInputFor(std::string_view text, const Environment& env) {
  ValuationVector v = ValuationVector::FromString(text, env.ladder.size());
  if (v.size() != env.n) {
    throw DimensionError("input '" + std::string(text) + "' has length " +
                         std::to_string(v.size()) + ", expected " +
                         std::to_string(env.n));
  }
  return v;
}

GeneratedInstance LoadConfiguredInstance(const ExperimentConfig& config, Section* facts) {
  if (config.instance_path) {
    LoadedInstance loaded = LoadInstance(ReadDocumentFile(*config.instance_path));
    const std::string name = loaded.algorithm.name();
    return GeneratedInstance{name, loaded.environment, std::move(loaded.rule),
                             std::move(loaded.algorithm)};
  }
  if (!config.generator) throw ParameterError("config needs 'instance' or 'generator'");
  if (!config.ladder) throw ParameterError("config needs a ladder");
  return InstantiateGenerator(*config.generator, config.params, config.seed, config.n,
                              *config.ladder, facts);
}

void CheckTransformFits(const ExperimentConfig& config, std::size_t k) {
  if (!config.transformation) return;
  switch (*config.transformation) {
    case TransformKind::kTwoValue:
    case TransformKind::kTwoValuePlus:
      if (k != 2) {
        throw ParameterError("transformation '" +
                             std::string(TransformId(*config.transformation)) +
                             "' needs a two-value ladder");
      }
      break;
    case TransformKind::kMultiValue:
      if (k < 3) throw ParameterError("transformation 'multi' needs at least 3 levels");
      break;
    case TransformKind::kConstant:
      break;
  }
}

BlackBoxOptions BoxOptions(const ExperimentConfig& config, std::size_t n) {
  BlackBoxOptions options;
  if (config.budget_c) {
    options.budget = PolynomialBudget(*config.budget_c, config.budget_degree, n);
  }
  options.hamming_radius = config.radius;
  options.check_outputs = config.check_outputs;
  return options;
}

bool Enumerable(const Environment& env, const VerifyOptions& options) {
  const std::size_t k = env.ladder.size();
  return InputSpace::Representable(env.n, k) &&
         InputSpace(env.n, k).size() <= options.enumeration_bound;
}

// The transformed rule, evaluated once per input, with query statistics.
struct EvaluatedRule {
  AllocationRule rule;
  // Statistics over every input evaluated so far.
  std::function<QueryStats()> stats;
};

EvaluatedRule EvaluateTransformed(const ExperimentConfig& config,
                                  const GeneratedInstance& instance) {
  const Environment& env = *instance.environment;
  if (!config.transformation) return {instance.algorithm, [] { return QueryStats{}; }};
  const TransformKind kind = *config.transformation;
  const BlackBoxOptions base = BoxOptions(config, env.n);
  const Algorithm algorithm = instance.algorithm;

  struct Outcome {
    Allocation allocation;
    std::uint64_t queries = 0;
    std::size_t radius = 0;
  };
  auto compute = [kind, base, algorithm](const ValuationVector& v) {
    BlackBoxOptions options = base;
    if (options.hamming_radius) options.hamming_center = v;
    InstrumentedBlackBox bb(algorithm, options);
    Outcome out;
    out.allocation = ApplyTransform(kind, bb, v);
    out.queries = bb.query_count();
    out.radius = bb.MaxDistanceFrom(v);
    return out;
  };

  EvaluatedRule result;
  if (Enumerable(env, config.verify)) {
    InputSpace space(env.n, env.ladder.size());
    auto queries = std::make_shared<std::vector<std::uint64_t>>(space.size());
    auto radii = std::make_shared<std::vector<std::size_t>>(space.size());
    auto table = std::make_shared<std::vector<Allocation>>(Tabulate(
        [&](const ValuationVector& v) {
          Outcome out = compute(v);
          const auto code = space.Encode(v);
          (*queries)[code] = out.queries;
          (*radii)[code] = out.radius;
          return out.allocation;
        },
        space, config.verify.workers));
    QueryStats stats;
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      stats.total_queries += (*queries)[code];
      stats.max_log_length = std::max(stats.max_log_length, (*queries)[code]);
      stats.max_radius = std::max(stats.max_radius, (*radii)[code]);
    }
    result.stats = [stats] { return stats; };
    result.rule = [space, table](const ValuationVector& v) {
      return (*table)[space.Encode(v)];
    };
    return result;
  }

  // Sampled mode: memoize whatever the verifiers ask for.
  struct Shared {
    std::mutex mutex;
    std::unordered_map<ValuationVector, Allocation> cache;
    QueryStats stats;
  };
  auto shared = std::make_shared<Shared>();
  result.rule = [compute, shared](const ValuationVector& v) {
    {
      std::lock_guard<std::mutex> lock(shared->mutex);
      auto it = shared->cache.find(v);
      if (it != shared->cache.end()) return it->second;
    }
    Outcome out = compute(v);
    std::lock_guard<std::mutex> lock(shared->mutex);
    shared->stats.total_queries += out.queries;
    shared->stats.max_log_length = std::max(shared->stats.max_log_length, out.queries);
    shared->stats.max_radius = std::max(shared->stats.max_radius, out.radius);
    shared->cache.emplace(v, out.allocation);
    return out.allocation;
  };
  result.stats = [shared] {
    std::lock_guard<std::mutex> lock(shared->mutex);
    return shared->stats;
  };
  return result;
}

void WriteCell(Section& s, const CellResult& cell) {
  s.Add("n", std::to_string(cell.n));
  if (!cell.ratio.empty()) s.Add("ratio", cell.ratio);
  s.Add("algorithm", cell.algorithm);
  s.Add("ladder", cell.ladder);
  WriteMonotonicity(s, cell.monotonicity);
  WriteWelfare(s, cell.welfare);
  s.Add("queries.max-log-length", std::to_string(cell.queries.max_log_length));
  s.Add("queries.max-radius", std::to_string(cell.queries.max_radius));
  s.Add("queries.total", std::to_string(cell.queries.total_queries));
  s.Add("meets-threshold", cell.meets_threshold ? "true" : "false");
}

Document ResultHeader(const ExperimentConfig& config, std::string_view command) {
  Document doc;
  doc.root().Add("format", std::string(kFormatVersion));
  doc.root().Add("kind", "result");
  doc.root().Add("command", std::string(command));
  WriteConfig(doc.AddSection("config"), config);
  return doc;
}

std::string ElapsedMs(std::chrono::steady_clock::time_point start) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return std::to_string(ms.count());
}

}  // namespace

RatioExpression RatioExpression::Parse(std::string_view text) {
  RatioExpression e;
  std::string compact;
  for (char c : text) {
    if (c != ' ' && c != '\t') compact += c;
  }
  e.text_ = compact;
  if (compact.empty()) throw ParameterError("empty ratio expression");
  const auto n_pos = compact.find('n');
  if (n_pos == std::string::npos) {
    e.coefficient_ = ParseRational(compact);
    e.offset_ = 0;
    return e;
  }
  e.uses_n_ = true;
  const std::string coefficient = compact.substr(0, n_pos);
  e.coefficient_ = coefficient.empty() ? Rational(1) : ParseRational(coefficient);
  std::string rest = compact.substr(n_pos + 1);
  if (!rest.empty() && rest.front() == '^') {
    std::size_t digits = 1;
    while (digits < rest.size() && std::isdigit(static_cast<unsigned char>(rest[digits]))) {
      ++digits;
    }
    std::uint64_t power = 0;
    if (!ParseUnsignedText(std::string_view(rest).substr(1, digits - 1), power) ||
        power == 0 || power > 8) {
      throw ParameterError("bad exponent in ratio expression '" + compact + "'");
    }
    e.power_ = static_cast<unsigned>(power);
    rest = rest.substr(digits);
  }
  e.offset_ = 0;
  if (!rest.empty()) {
    if (rest.front() != '+' && rest.front() != '-') {
      throw ParameterError("malformed ratio expression '" + compact + "'");
    }
    e.offset_ = ParseRational(rest.substr(1));
    if (rest.front() == '-') e.offset_ = -e.offset_;
  }
  return e;
}

Rational RatioExpression::Evaluate(std::size_t n) const {
  if (!uses_n_) return coefficient_;
  Rational power = 1;
  for (unsigned i = 0; i < power_; ++i) power *= Rational(static_cast<long>(n));
  return coefficient_ * power + offset_;
}

ValueLadder GeometricLadder(const Rational& ratio, std::size_t levels) {
  if (ratio <= 1) {
    throw ParameterError("ladder ratio must exceed 1, got " + FormatRational(ratio));
  }
  std::vector<Rational> values;
  Rational v = 1;
  for (std::size_t i = 0; i < levels; ++i) {
    values.push_back(v);
    v *= ratio;
  }
  return ValueLadder(std::move(values));
}

ExperimentConfig ParseConfig(const Document& doc) {
  doc.RequireHeader("experiment");
  return ParseConfigSection(doc.root());
}

ExperimentConfig ParseConfigSection(const Section& section) {
  ExperimentConfig c;
  bool panel_has_random = false;
  bool sweeping = false;
  std::set<std::string> seen;
  for (const Entry& e : section.entries()) {
    const std::string& key = e.key;
    if (key.rfind("param.", 0) != 0 && key != "format" && key != "kind" &&
        !seen.insert(key).second) {
      throw ParseError("duplicate key", e.line, key);
    }
    auto wrap = [&](auto&& fn) {
      try {
        fn();
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw ParseError(err.what(), e.line, key);
      }
    };
    if (key == "format" || key == "kind") {
      continue;
    } else if (key == "instance") {
      c.instance_path = e.value;
    } else if (key == "generator") {
      const auto& names = GeneratorNames();
      if (std::find(names.begin(), names.end(), e.value) == names.end()) {
        throw ParseError("unknown generator '" + e.value + "'", e.line, key);
      }
      c.generator = e.value;
    } else if (key.rfind("param.", 0) == 0) {
      if (key.size() == 6) throw ParseError("empty parameter name", e.line, key);
      c.params[key.substr(6)] = e.value;
    } else if (key == "seed") {
      c.seed = ConfigUnsigned(e);
    } else if (key == "n") {
      c.n = ConfigUnsigned(e);
    } else if (key == "ladder") {
      c.ladder = ParseLadder(e.value, e.line, key);
    } else if (key == "transformation") {
      if (e.value == "none") {
        c.transformation.reset();
      } else {
        wrap([&] { c.transformation = ParseTransformKind(e.value); });
      }
    } else if (key == "sweep.n") {
      sweeping = true;
      c.sweep_n.clear();
      for (const auto& item : SplitList(e.value)) {
        std::uint64_t v = 0;
        if (!ParseUnsignedText(item, v) || v == 0) {
          throw ParseError("bad agent count '" + item + "'", e.line, key);
        }
        c.sweep_n.push_back(v);
      }
    } else if (key == "sweep.ratio") {
      sweeping = true;
      c.sweep_ratio.clear();
      wrap([&] {
        for (const auto& item : SplitList(e.value)) {
          c.sweep_ratio.push_back(RatioExpression::Parse(item));
        }
      });
    } else if (key == "levels") {
      c.levels = ConfigUnsigned(e);
      if (c.levels < 2 || c.levels > kMaxLadderSize) {
        throw ParseError("levels must be in 2.." + std::to_string(kMaxLadderSize),
                         e.line, key);
      }
    } else if (key == "panel") {
      c.panel = SplitList(e.value);
      for (const auto& name : c.panel) {
        if (name != "all-ones" && name != "knapsack-greedy" &&
            name != "knapsack-optimal" && name != "random") {
          throw ParseError("unknown panel member '" + name + "'", e.line, key);
        }
      }
    } else if (key == "panel.random") {
      c.panel_random = ConfigUnsigned(e);
    } else if (key == "threshold") {
      wrap([&] { c.threshold = ParseRational(e.value); });
    } else if (key == "budget.c") {
      c.budget_c = ConfigUnsigned(e);
    } else if (key == "budget.degree") {
      c.budget_degree = static_cast<unsigned>(ConfigUnsigned(e));
    } else if (key == "radius") {
      c.radius = ConfigUnsigned(e);
    } else if (key == "check-outputs") {
      c.check_outputs = ConfigBool(e);
    } else if (key == "bound") {
      c.verify.enumeration_bound = ConfigUnsigned(e);
    } else if (key == "workers") {
      c.verify.workers = static_cast<unsigned>(std::max<std::uint64_t>(1, ConfigUnsigned(e)));
    } else if (key == "samples") {
      c.verify.samples = ConfigUnsigned(e);
    } else if (key == "output") {
      c.output = e.value;
    } else {
      throw ParseError("unknown key", e.line, key);
    }
  }
  if (c.instance_path && c.generator) {
    throw ParseError("'instance' and 'generator' are mutually exclusive",
                     section.Find("generator")->line, "generator");
  }
  panel_has_random =
      std::find(c.panel.begin(), c.panel.end(), "random") != c.panel.end();
  const bool needs_seed = (c.generator && IsRandomized(*c.generator)) ||
                          (sweeping && !c.generator && !c.instance_path &&
                           panel_has_random && c.panel_random > 0);
  if (needs_seed && !c.seed) {
    throw ParseError("a seed is required for randomized generators", section.line(),
                     "seed");
  }
  if (c.seed) c.verify.seed = *c.seed;
  return c;
}

void WriteConfig(Section& s, const ExperimentConfig& c) {
  if (c.instance_path) s.Add("instance", *c.instance_path);
  if (c.generator) s.Add("generator", *c.generator);
  for (const auto& [k, v] : c.params) s.Add("param." + k, v);
  if (c.seed) s.Add("seed", std::to_string(*c.seed));
  if (c.n) s.Add("n", std::to_string(*c.n));
  if (c.ladder) s.Add("ladder", FormatLadder(*c.ladder));
  s.Add("transformation",
        c.transformation ? std::string(TransformId(*c.transformation)) : "none");
  if (!c.sweep_n.empty()) s.Add("sweep.n", JoinSizes(c.sweep_n));
  if (!c.sweep_ratio.empty()) {
    std::vector<std::string> items;
    for (const auto& r : c.sweep_ratio) items.push_back(r.text());
    s.Add("sweep.ratio", JoinList(items));
  }
  s.Add("levels", std::to_string(c.levels));
  s.Add("panel", JoinList(c.panel));
  s.Add("panel.random", std::to_string(c.panel_random));
  s.Add("threshold", FormatRational(c.threshold));
  if (c.budget_c) s.Add("budget.c", std::to_string(*c.budget_c));
  s.Add("budget.degree", std::to_string(c.budget_degree));
  if (c.radius) s.Add("radius", std::to_string(*c.radius));
  s.Add("check-outputs", c.check_outputs ? "true" : "false");
  s.Add("bound", std::to_string(c.verify.enumeration_bound));
  s.Add("workers", std::to_string(c.verify.workers));
  s.Add("samples", std::to_string(c.verify.samples));
  if (c.output) s.Add("output", *c.output);
}

std::vector<Rational> StandardKnapsackWeights(std::size_t n) {
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < n; ++i) weights.emplace_back(static_cast<long>(1 + i % 3));
  return weights;
}

Rational StandardKnapsackCapacity(const std::vector<Rational>& weights) {
  Rational total = 0;
  for (const auto& w : weights) total += w;
  mpz_class half = total.get_num() / (2 * total.get_den());
  return Rational(half);
}

const std::vector<std::string>& GeneratorNames() {
  static const std::vector<std::string> names = {
      "all-ones", "knapsack-greedy", "knapsack-optimal", "random",
      "hamming",  "thm1",            "block"};
  return names;
}

GeneratedInstance InstantiateGenerator(const std::string& name,
                                       const std::map<std::string, std::string>& params,
                                       std::optional<std::uint64_t> seed,
                                       std::optional<std::size_t> n,
                                       const ValueLadder& ladder, Section* facts) {
  Section scratch;
  Section& out = facts ? *facts : scratch;
  if (seed) out.Add("seed", std::to_string(*seed));
  if (name == "all-ones") return GenerateAllOnes(RequireN(n, name), ladder);
  if (name == "knapsack-greedy" || name == "knapsack-optimal") {
    std::vector<Rational> weights;
    Rational capacity;
    if (params.count("weights")) {
      for (const auto& w : SplitList(params.at("weights"))) {
        weights.push_back(ParseRational(w));
      }
      if (n && *n != weights.size()) {
        throw ParameterError("param.weights has " + std::to_string(weights.size()) +
                             " entries but n is " + std::to_string(*n));
      }
    } else {
      weights = StandardKnapsackWeights(RequireN(n, name));
    }
    capacity = params.count("capacity") ? ParseRational(params.at("capacity"))
                                        : StandardKnapsackCapacity(weights);
    const auto policy = name == "knapsack-greedy" ? KnapsackPolicy::kGreedyDensity
                                                  : KnapsackPolicy::kBruteForceOptimal;
    out.Add("capacity", FormatRational(capacity));
    return GenerateKnapsack(std::move(weights), capacity, policy, ladder);
  }
  if (name == "random") {
    return GenerateRandom(RequireN(n, name), ladder, RequireSeed(seed, name));
  }
  if (name == "hamming") {
    const std::size_t m = RequireParamSize(params, "m", name);
    const std::size_t f = RequireParamSize(params, "f", name);
    HammingAdversaryInstance h = GenerateHammingAdversary(m, f, ladder);
    out.Add("m", std::to_string(h.m));
    out.Add("f", std::to_string(h.f));
    out.Add("threshold", std::to_string(h.threshold));
    return std::move(h.instance);
  }
  if (name == "thm1") {
    const std::size_t m = RequireParamSize(params, "m", name);
    Thm1Instance t = GenerateThm1(m, RequireSeed(seed, name), ladder);
    out.Add("m", std::to_string(t.m));
    out.Add("permutation", JoinSizes(t.permutation));
    out.Add("special-input", t.special_input.ToString());
    out.Add("special-allocation", t.special_allocation.ToString());
    out.Add("default-allocation", t.default_allocation.ToString());
    out.Add("fakes", std::to_string(t.fakes.size()));
    return std::move(t.instance);
  }
  if (name == "block") {
    BlockParams p;
    p.first_block = RequireParamSize(params, "first", name);
    p.middle_block = RequireParamSize(params, "middle", name);
    p.last_block = RequireParamSize(params, "last", name);
    p.ones = RequireParamSize(params, "ones", name);
    if (params.count("positions")) {
      p.explicit_positions = ParamList(params, "positions");
    } else {
      p.seed = RequireSeed(seed, name);
    }
    p.chain_steps = ParamSize(params, "chain");
    BlockAdversaryInstance b = GenerateBlockAdversary(p, ladder);
    out.Add("first", std::to_string(b.first_block));
    out.Add("middle", std::to_string(b.middle_block));
    out.Add("last", std::to_string(b.last_block));
    out.Add("ones", std::to_string(b.ones));
    out.Add("positions", JoinSizes(b.chosen_positions));
    out.Add("special-allocation", b.special_allocation.ToString());
    out.Add("default-allocation", b.default_allocation.ToString());
    for (const auto& link : b.chain) out.Add("chain", link.ToString());
    return std::move(b.instance);
  }
  throw ParameterError("unknown generator '" + name + "'");
}

GeneratedInstance InstantiateScaled(const ExperimentConfig& config,
                                    const std::string& name, std::size_t n,
                                    const ValueLadder& ladder, std::uint64_t seed) {
  std::map<std::string, std::string> params = config.params;
  if (name == "hamming") {
    if (n % 2 != 0) throw ParameterError("hamming sweep needs even n, got " + std::to_string(n));
    params["m"] = std::to_string(n / 2);
    if (!params.count("f")) params["f"] = "1";
  } else if (name == "block") {
    if (n < 7) throw ParameterError("block sweep needs n >= 7, got " + std::to_string(n));
    const std::size_t middle = (n - 1) / 2;
    params["first"] = std::to_string(n - 1);
    params["middle"] = std::to_string(middle);
    params["last"] = "1";
    params["ones"] = std::to_string(middle - 1);
    params.erase("positions");
  } else if (name == "thm1") {
    if (n % 8 != 0) throw ParameterError("thm1 sweep needs n divisible by 8");
    params["m"] = std::to_string(n / 4);
  }
  return InstantiateGenerator(name, params, seed, n, ladder);
}

CellResult RunCell(const ExperimentConfig& config, const GeneratedInstance& instance) {
  const Environment& env = *instance.environment;
  CheckTransformFits(config, env.ladder.size());
  CellResult cell;
  cell.n = env.n;
  cell.algorithm = instance.generator;
  cell.ladder = FormatLadder(env.ladder);

  EvaluatedRule evaluated = EvaluateTransformed(config, instance);
  cell.monotonicity = CheckMonotone(evaluated.rule, env, config.verify);
  cell.welfare =
      ComputeWelfareReport(evaluated.rule, instance.algorithm, env, config.verify);
  cell.queries = evaluated.stats();
  cell.meets_threshold = cell.welfare.pointwise_min_fraction >= config.threshold;
  return cell;
}

CommandResult RunVerify(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  GeneratedInstance instance = LoadConfiguredInstance(config, nullptr);
  CellResult cell = RunCell(config, instance);
  CommandResult result{ResultHeader(config, "verify"), 0};
  WriteCell(result.document.AddSection("record"), cell);
  Section& summary = result.document.AddSection("summary");
  summary.Add("records", "1");
  summary.Add("violations", std::to_string(cell.monotonicity.violations.size()));
  summary.Add("meets-threshold", cell.meets_threshold ? "true" : "false");
  if (config.transformation && !cell.monotonicity.monotone()) result.exit_code = 1;
  summary.Add("duration-ms", ElapsedMs(start));
  return result;
}

CommandResult RunSweep(const ExperimentConfig& config) {
  if (config.sweep_n.empty() || config.sweep_ratio.empty()) {
    throw ParameterError("sweep needs nonempty sweep.n and sweep.ratio");
  }
  if (config.instance_path) throw ParameterError("sweep does not take an instance file");
  const auto start = std::chrono::steady_clock::now();
  CommandResult result{ResultHeader(config, "sweep"), 0};
  std::vector<std::string> summary_lines;
  std::size_t records = 0, passing_cells = 0, cells = 0, violations = 0;
  for (std::size_t n : config.sweep_n) {
    for (const auto& ratio : config.sweep_ratio) {
      const ValueLadder ladder = GeometricLadder(ratio.Evaluate(n), config.levels);
      std::vector<std::pair<std::string, GeneratedInstance>> panel;
      if (config.generator) {
        panel.emplace_back(*config.generator,
                           InstantiateScaled(config, *config.generator, n, ladder,
                                             config.seed.value_or(0)));
      } else {
        for (const auto& member : config.panel) {
          if (member == "random") {
            for (std::size_t i = 0; i < config.panel_random; ++i) {
              panel.emplace_back(
                  "random#" + std::to_string(i),
                  GenerateRandom(n, ladder, *config.seed + i));
            }
          } else {
            panel.emplace_back(member,
                               InstantiateScaled(config, member, n, ladder, 0));
          }
        }
      }
      Rational worst = 1;
      std::size_t cell_violations = 0;
      for (auto& [id, instance] : panel) {
        CellResult cell = RunCell(config, instance);
        cell.ratio = ratio.text();
        cell.algorithm = id;
        WriteCell(result.document.AddSection("record"), cell);
        ++records;
        if (cell.welfare.pointwise_min_fraction < worst) {
          worst = cell.welfare.pointwise_min_fraction;
        }
        cell_violations += cell.monotonicity.violations.size();
      }
      const bool pass = worst >= config.threshold;
      ++cells;
      if (pass) ++passing_cells;
      violations += cell_violations;
      summary_lines.push_back("n=" + std::to_string(n) + " ratio=" + ratio.text() +
                              " ladder=" + FormatLadder(ladder) +
                              " min-pointwise=" + FormatRational(worst) +
                              " violations=" + std::to_string(cell_violations) +
                              (pass ? " pass" : " below-threshold"));
    }
  }
  Section& summary = result.document.AddSection("summary");
  summary.Add("records", std::to_string(records));
  summary.Add("cells", std::to_string(cells));
  summary.Add("cells-meeting-threshold", std::to_string(passing_cells));
  summary.Add("violations", std::to_string(violations));
  for (const auto& line : summary_lines) summary.Add("cell", line);
  if (config.transformation && violations > 0) result.exit_code = 1;
  summary.Add("duration-ms", ElapsedMs(start));
  return result;
}

CommandResult RunPayments(const ExperimentConfig& config, std::string_view input) {
  GeneratedInstance instance = LoadConfiguredInstance(config, nullptr);
  const Environment& env = *instance.environment;
  CheckTransformFits(config, env.ladder.size());
  const ValuationVector v = ParseInputFor(input, env);
  EvaluatedRule evaluated = EvaluateTransformed(config, instance);
  CommandResult result{ResultHeader(config, "payments"), 0};
  Section& s = result.document.AddSection("payments");
  s.Add("input", v.ToString());
  const MonotonicityReport report = CheckMonotone(evaluated.rule, env, config.verify);
  if (!report.monotone()) {
    s.Add("status", "refused");
    s.Add("reason", "allocation rule is not monotone");
    WriteMonotonicity(s, report);
    result.exit_code = 1;
    return result;
  }
  const PaymentResult payments = MyersonPayments(evaluated.rule, v, env.ladder);
  s.Add("status", payments.consistent ? "ok" : "inconsistent");
  s.Add("monotone.sampled", report.sampled ? "true" : "false");
  s.Add("allocation", payments.allocation.ToString());
  for (std::size_t i = 0; i < payments.payments.size(); ++i) {
    s.Add("payment", std::to_string(i) + " " + FormatRational(payments.payments[i]));
  }
  if (!payments.consistent) result.exit_code = 1;
  return result;
}

CommandResult RunAdversary(const ExperimentConfig& config) {
  if (!config.generator) throw ParameterError("adversary needs a generator");
  if (!config.ladder) throw ParameterError("adversary needs a ladder");
  Section facts("generator");
  GeneratedInstance instance = InstantiateGenerator(
      *config.generator, config.params, config.seed, config.n, *config.ladder, &facts);
  return {InstanceDocument(instance, &facts), 0};
}

CommandResult RunOpt(const ExperimentConfig& config, std::string_view input) {
  GeneratedInstance instance = LoadConfiguredInstance(config, nullptr);
  const Environment& env = *instance.environment;
  const ValuationVector v = ParseInputFor(input, env);
  const Optimum opt = OptWelfare(v, env.feasibility, env.ladder);
  Document doc;
  doc.root().Add("format", std::string(kFormatVersion));
  doc.root().Add("kind", "result");
  doc.root().Add("command", "opt");
  Section& s = doc.AddSection("opt");
  s.Add("input", v.ToString());
  s.Add("welfare", FormatRational(opt.welfare));
  s.Add("argmax", opt.argmax ? opt.argmax->ToString() : "none");
  s.Add("feasibility-empty", opt.feasibility_empty ? "true" : "false");
  return {std::move(doc), 0};
}

std::string WithoutDuration(const Document& doc) {
  std::istringstream in(doc.Serialize());
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("duration-ms:", 0) == 0) continue;
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace dcbb
