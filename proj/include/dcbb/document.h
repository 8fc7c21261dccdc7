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

// The line-oriented text format shared by configs, instance files and result
// documents:
//
//   # comment
//   format: dcbb/1
//   kind: instance
//   [environment]
//   n: 4
//   maximal: 1100
//   maximal: 0011
//
// A document is a root section followed by named sections. Keys may repeat
// and order is preserved, so serialization is byte-stable.

#ifndef DCBB_DOCUMENT_H_
#define DCBB_DOCUMENT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dcbb {

inline constexpr std::string_view kFormatVersion = "dcbb/1";

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

class Section {
 public:
  Section() = default;
  explicit Section(std::string name, std::size_t line = 0)
      : name_(std::move(name)), line_(line) {}

  const std::string& name() const { return name_; }
  std::size_t line() const { return line_; }
  const std::vector<Entry>& entries() const { return entries_; }

  Section& Add(std::string key, std::string value, std::size_t line = 0);

  // First entry with `key`, or nullptr.
  const Entry* Find(std::string_view key) const;
  // Throws ParseError naming the key if it is absent.
  const Entry& Require(std::string_view key) const;
  std::vector<const Entry*> FindAll(std::string_view key) const;
  bool Has(std::string_view key) const { return Find(key) != nullptr; }

 private:
  std::string name_;
  std::size_t line_ = 0;
  std::vector<Entry> entries_;
};

class Document {
 public:
  Document() : sections_(1) {}

  Section& root() { return sections_.front(); }
  const Section& root() const { return sections_.front(); }
  Section& AddSection(std::string name);
  const std::vector<Section>& sections() const { return sections_; }

  // First section named `name`, or nullptr.
  const Section* FindSection(std::string_view name) const;
  // Throws ParseError if absent.
  const Section& RequireSection(std::string_view name) const;

  // Throws ParseError with the line number on malformed input.
  static Document Parse(std::string_view text);
  std::string Serialize() const;

  // Checks "format: dcbb/1" and, when given, "kind: <kind>".
  void RequireHeader(std::optional<std::string_view> kind = std::nullopt) const;

 private:
  std::vector<Section> sections_;
};

Document ReadDocumentFile(const std::string& path);
void WriteDocumentFile(const std::string& path, const Document& doc);

// Comma-separated list with surrounding whitespace trimmed.
std::vector<std::string> SplitList(std::string_view text);
std::string JoinList(const std::vector<std::string>& items);

}  // namespace dcbb

#endif  // DCBB_DOCUMENT_H_
