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

// Mapping between library types and document sections.

#ifndef DCBB_SERIALIZE_H_
#define DCBB_SERIALIZE_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "dcbb/adversaries.h"
#include "dcbb/blackbox.h"
#include "dcbb/document.h"
#include "dcbb/model.h"
#include "dcbb/verify.h"

namespace dcbb {

// "1, 10, 3/2".
std::string FormatLadder(const ValueLadder& ladder);
// Throws ParseError naming `field` when a value is malformed or the ladder
// invariants fail.
ValueLadder ParseLadder(std::string_view text, std::size_t line = 0,
                        std::string_view field = "ladder");

// Keys n, ladder, maximal (repeated).
void WriteEnvironment(Section& section, const Environment& env);
Environment ReadEnvironment(const Section& section);

// Key "rule" selects the kind: case-table, threshold, truth-table, knapsack,
// seeded-random.
void WriteRule(Section& section, const RuleSpec& rule, const Environment& env);
RuleSpec ReadRule(const Section& section, const Environment& env);

// Self-contained instance file: [environment], [algorithm], and a
// [generator] section with generator-specific facts.
Document InstanceDocument(const GeneratedInstance& instance,
                          const Section* generator_facts = nullptr);

struct LoadedInstance {
  std::shared_ptr<const Environment> environment;
  RuleSpec rule;
  Algorithm algorithm;
};

LoadedInstance LoadInstance(const Document& doc);

// Appends a [query-log] section: "query: <index> <input> <allocation>".
void AppendQueryLog(Document& doc, const InstrumentedBlackBox& bb,
                    std::string_view section_name = "query-log");

// Writes report fields with the given key prefix. At most `max_listed`
// violations are listed individually.
void WriteMonotonicity(Section& section, const MonotonicityReport& report,
                       std::size_t max_listed = 20);
void WriteWelfare(Section& section, const WelfareReport& report);

}  // namespace dcbb

#endif  // DCBB_SERIALIZE_H_
