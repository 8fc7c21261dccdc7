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

#include "dcbb/document.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "dcbb/errors.h"

namespace dcbb {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool ValidKey(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
          c == '.')) {
      return false;
    }
  }
  return true;
}

}  // namespace

Section& Section::Add(std::string key, std::string value, std::size_t line) {
  entries_.push_back({std::move(key), std::move(value), line});
  return *this;
}

const Entry* Section::Find(std::string_view key) const {
  for (const auto& e : entries_) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const Entry& Section::Require(std::string_view key) const {
  if (const Entry* e = Find(key)) return *e;
  throw ParseError(
      "missing" + (name_.empty() ? std::string() : " in [" + name_ + "]"), line_,
      std::string(key));
}

std::vector<const Entry*> Section::FindAll(std::string_view key) const {
  std::vector<const Entry*> out;
  for (const auto& e : entries_) {
    if (e.key == key) out.push_back(&e);
  }
  return out;
}

Section& Document::AddSection(std::string name) {
  sections_.emplace_back(std::move(name));
  return sections_.back();
}

const Section* Document::FindSection(std::string_view name) const {
  for (std::size_t i = 1; i < sections_.size(); ++i) {
    if (sections_[i].name() == name) return &sections_[i];
  }
  return nullptr;
}

const Section& Document::RequireSection(std::string_view name) const {
  if (const Section* s = FindSection(name)) return *s;
  throw ParseError("missing section [" + std::string(name) + "]");
}

Document Document::Parse(std::string_view text) {
  Document doc;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3 ||
          !ValidKey(Trim(line.substr(1, line.size() - 2)))) {
        throw ParseError("malformed section header '" + std::string(line) + "'",
                         line_no);
      }
      doc.sections_.emplace_back(std::string(Trim(line.substr(1, line.size() - 2))),
                                 line_no);
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'key: value', got '" + std::string(line) + "'",
                       line_no);
    }
    const std::string_view key = Trim(line.substr(0, colon));
    if (!ValidKey(key)) {
      throw ParseError("invalid key '" + std::string(key) + "'", line_no);
    }
    doc.sections_.back().Add(std::string(key),
                             std::string(Trim(line.substr(colon + 1))), line_no);
  }
  return doc;
}

std::string Document::Serialize() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    if (i > 0) out << "\n[" << sections_[i].name() << "]\n";
    for (const auto& e : sections_[i].entries()) {
      out << e.key << ':';
      if (!e.value.empty()) out << ' ' << e.value;
      out << '\n';
    }
  }
  return out.str();
}

void Document::RequireHeader(std::optional<std::string_view> kind) const {
  const Entry& format = root().Require("format");
  if (format.value != kFormatVersion) {
    throw ParseError("unsupported format '" + format.value + "', expected " +
                         std::string(kFormatVersion),
                     format.line, "format");
  }
  if (kind) {
    const Entry& k = root().Require("kind");
    if (k.value != *kind) {
      throw ParseError("expected kind '" + std::string(*kind) + "', got '" +
                           k.value + "'",
                       k.line, "kind");
    }
  }
}

Document ReadDocumentFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return Document::Parse(buf.str());
}

void WriteDocumentFile(const std::string& path, const Document& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  out << doc.Serialize();
  if (!out) throw ParameterError("write to '" + path + "' failed");
}

std::vector<std::string> SplitList(std::string_view text) {
  std::vector<std::string> out;
  if (Trim(text).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.emplace_back(Trim(text.substr(pos, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string JoinList(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace dcbb
