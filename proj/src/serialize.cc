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

#include "dcbb/serialize.h"

#include <charconv>
#include <variant>

#include "dcbb/errors.h"

namespace dcbb {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t ParseUnsigned(const Entry& e) {
  std::uint64_t out = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("expected a non-negative integer, got '" + e.value + "'",
                     e.line, e.key);
  }
  return out;
}

Allocation ParseAllocation(const std::string& text, const Entry& e,
                           std::size_t n) {
  try {
    Allocation x = Allocation::FromString(text);
    if (x.size() != n) {
      throw ParseError("allocation '" + text + "' does not have length " +
                           std::to_string(n),
                       e.line, e.key);
    }
    return x;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(err.what(), e.line, e.key);
  }
}

ValuationVector ParseInput(const std::string& text, const Entry& e,
                           const Environment& env) {
  ValuationVector v;
  try {
    v = ValuationVector::FromString(text, env.ladder.size());
  } catch (const Error& err) {
    throw ParseError(err.what(), e.line, e.key);
  }
  if (v.size() != env.n) {
    throw ParseError("input '" + text + "' does not have length " +
                         std::to_string(env.n),
                     e.line, e.key);
  }
  return v;
}

// "<input> -> <allocation>".
std::pair<ValuationVector, Allocation> ParseMapping(const Entry& e,
                                                    const Environment& env) {
  const auto arrow = e.value.find("->");
  if (arrow == std::string::npos) {
    throw ParseError("expected '<input> -> <allocation>'", e.line, e.key);
  }
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto l = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, l - b + 1);
  };
  return {ParseInput(trim(e.value.substr(0, arrow)), e, env),
          ParseAllocation(trim(e.value.substr(arrow + 2)), e, env.n)};
}

}  // namespace

std::string FormatLadder(const ValueLadder& ladder) {
  std::vector<std::string> items;
  for (const auto& v : ladder.values()) items.push_back(FormatRational(v));
  return JoinList(items);
}

ValueLadder ParseLadder(std::string_view text, std::size_t line,
                        std::string_view field) {
  std::vector<Rational> values;
  try {
    for (const auto& item : SplitList(text)) values.push_back(ParseRational(item));
    return ValueLadder(std::move(values));
  } catch (const Error& err) {
    throw ParseError(err.what(), line, std::string(field));
  }
}

void WriteEnvironment(Section& section, const Environment& env) {
  section.Add("n", std::to_string(env.n));
  section.Add("ladder", FormatLadder(env.ladder));
  for (const auto& m : env.feasibility.maximal()) section.Add("maximal", m.ToString());
}

Environment ReadEnvironment(const Section& section) {
  const Entry& n_entry = section.Require("n");
  const std::size_t n = ParseUnsigned(n_entry);
  const Entry& ladder_entry = section.Require("ladder");
  ValueLadder ladder = ParseLadder(ladder_entry.value, ladder_entry.line);
  std::vector<Allocation> maximal;
  for (const Entry* e : section.FindAll("maximal")) {
    maximal.push_back(ParseAllocation(e->value, *e, n));
  }
  return Environment(n, std::move(ladder), NormalizeAntichain(n, std::move(maximal)));
}

void WriteRule(Section& section, const RuleSpec& rule, const Environment& env) {
  std::visit(
      Overloaded{
          [&](const CaseTableRule& r) {
            section.Add("rule", "case-table");
            for (const auto& [input, output] : r.cases) {
              section.Add("case", input.ToString() + " -> " + output.ToString());
            }
            section.Add("default", r.fallback.ToString());
          },
          [&](const ThresholdRule& r) {
            section.Add("rule", "threshold");
            section.Add("level", std::to_string(r.level));
            section.Add("threshold", std::to_string(r.threshold));
            section.Add("at-most", r.at_most.ToString());
            section.Add("above", r.above.ToString());
          },
          [&](const TruthTableRule& r) {
            section.Add("rule", "truth-table");
            InputSpace space(env.n, env.ladder.size());
            for (std::uint64_t code = 0; code < r.table.size(); ++code) {
              section.Add("row", space.Decode(code).ToString() + " -> " +
                                     r.table[code].ToString());
            }
          },
          [&](const KnapsackRule& r) {
            section.Add("rule", "knapsack");
            std::vector<std::string> weights;
            for (const auto& w : r.weights) weights.push_back(FormatRational(w));
            section.Add("weights", JoinList(weights));
            section.Add("capacity", FormatRational(r.capacity));
            section.Add("policy", std::string(KnapsackPolicyId(r.policy)));
          },
          [&](const SeededRandomRule& r) {
            section.Add("rule", "seeded-random");
            section.Add("seed", std::to_string(r.seed));
          },
      },
      rule);
}

RuleSpec ReadRule(const Section& section, const Environment& env) {
  const Entry& kind = section.Require("rule");
  if (kind.value == "case-table") {
    CaseTableRule r;
    for (const Entry* e : section.FindAll("case")) r.cases.push_back(ParseMapping(*e, env));
    const Entry& d = section.Require("default");
    r.fallback = ParseAllocation(d.value, d, env.n);
    return r;
  }
  if (kind.value == "threshold") {
    ThresholdRule r;
    const Entry& level = section.Require("level");
    const auto lv = ParseUnsigned(level);
    if (lv >= env.ladder.size()) throw ParseError("level outside the ladder", level.line, "level");
    r.level = static_cast<Level>(lv);
    r.threshold = ParseUnsigned(section.Require("threshold"));
    const Entry& at_most = section.Require("at-most");
    const Entry& above = section.Require("above");
    r.at_most = ParseAllocation(at_most.value, at_most, env.n);
    r.above = ParseAllocation(above.value, above, env.n);
    return r;
  }
  if (kind.value == "truth-table") {
    TruthTableRule r;
    InputSpace space(env.n, env.ladder.size());
    const auto rows = section.FindAll("row");
    if (rows.size() != space.size()) {
      throw ParseError("truth table needs " + std::to_string(space.size()) + " rows",
                       kind.line, "row");
    }
    r.table.resize(space.size());
    for (std::uint64_t code = 0; code < rows.size(); ++code) {
      auto [input, output] = ParseMapping(*rows[code], env);
      if (space.Encode(input) != code) {
        throw ParseError("rows must be listed in input order", rows[code]->line, "row");
      }
      r.table[code] = std::move(output);
    }
    return r;
  }
  if (kind.value == "knapsack") {
    KnapsackRule r;
    const Entry& weights = section.Require("weights");
    const Entry& capacity = section.Require("capacity");
    const Entry& policy = section.Require("policy");
    try {
      for (const auto& w : SplitList(weights.value)) r.weights.push_back(ParseRational(w));
    } catch (const Error& err) {
      throw ParseError(err.what(), weights.line, "weights");
    }
    try {
      r.capacity = ParseRational(capacity.value);
    } catch (const Error& err) {
      throw ParseError(err.what(), capacity.line, "capacity");
    }
    try {
      r.policy = ParseKnapsackPolicy(policy.value);
    } catch (const Error& err) {
      throw ParseError(err.what(), policy.line, "policy");
    }
    return r;
  }
  if (kind.value == "seeded-random") {
    return SeededRandomRule{ParseUnsigned(section.Require("seed"))};
  }
  throw ParseError("unknown rule kind '" + kind.value + "'", kind.line, "rule");
}

Document InstanceDocument(const GeneratedInstance& instance,
                          const Section* generator_facts) {
  Document doc;
  doc.root().Add("format", std::string(kFormatVersion));
  doc.root().Add("kind", "instance");
  doc.root().Add("generator", instance.generator);
  WriteEnvironment(doc.AddSection("environment"), *instance.environment);
  WriteRule(doc.AddSection("algorithm"), instance.rule, *instance.environment);
  if (generator_facts) {
    Section& facts = doc.AddSection("generator");
    for (const auto& e : generator_facts->entries()) facts.Add(e.key, e.value);
  }
  return doc;
}

LoadedInstance LoadInstance(const Document& doc) {
  doc.RequireHeader("instance");
  auto env = std::make_shared<const Environment>(
      ReadEnvironment(doc.RequireSection("environment")));
  RuleSpec rule = ReadRule(doc.RequireSection("algorithm"), *env);
  const Entry* name = doc.root().Find("generator");
  auto build = [&]() -> Algorithm {
    try {
      return BuildAlgorithm(env, rule, name ? name->value : "loaded");
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(err.what(), doc.RequireSection("algorithm").line(), "rule");
    }
  };
  Algorithm algorithm = build();
  return LoadedInstance{std::move(env), std::move(rule), std::move(algorithm)};
}

void AppendQueryLog(Document& doc, const InstrumentedBlackBox& bb,
                    std::string_view section_name) {
  Section& s = doc.AddSection(std::string(section_name));
  for (std::size_t i = 0; i < bb.log().size(); ++i) {
    const auto& q = bb.log()[i];
    s.Add("query", std::to_string(i) + " " + q.input.ToString() + " " +
                       q.output.ToString());
  }
}

void WriteMonotonicity(Section& section, const MonotonicityReport& report,
                       std::size_t max_listed) {
  section.Add("monotone.violations", std::to_string(report.violations.size()));
  section.Add("monotone.checked-pairs", std::to_string(report.checked_pairs));
  section.Add("monotone.sampled", report.sampled ? "true" : "false");
  if (report.sampled) section.Add("monotone.seed", std::to_string(report.seed));
  for (std::size_t i = 0; i < report.violations.size() && i < max_listed; ++i) {
    const auto& v = report.violations[i];
    section.Add("monotone.violation",
                v.input.ToString() + " agent=" + std::to_string(v.agent) +
                    " low=" + std::to_string(v.low) + " high=" +
                    std::to_string(v.high));
  }
}

void WriteWelfare(Section& section, const WelfareReport& report) {
  section.Add("welfare.pointwise-min-fraction",
              FormatRational(report.pointwise_min_fraction));
  section.Add("welfare.full-welfare-count", std::to_string(report.full_welfare_count));
  section.Add("welfare.total-inputs", std::to_string(report.total_inputs));
  section.Add("welfare.zero-welfare-inputs",
              std::to_string(report.zero_welfare_inputs));
  section.Add("welfare.fraction-full-welfare",
              FormatRational(report.fraction_full_welfare()));
  section.Add("welfare.sum-rule", FormatRational(report.sum_welfare_rule));
  section.Add("welfare.sum-original", FormatRational(report.sum_welfare_original));
  section.Add("welfare.approx-ratio-rule", FormatRational(report.approx_ratio_rule));
  section.Add("welfare.approx-ratio-original",
              FormatRational(report.approx_ratio_original));
  section.Add("welfare.sampled", report.sampled ? "true" : "false");
}

}  // namespace dcbb
