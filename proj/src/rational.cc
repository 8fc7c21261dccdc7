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

#include "dcbb/rational.h"

#include <cctype>
#include <string>

#include "dcbb/errors.h"

namespace dcbb {
namespace {

bool IsInteger(std::string_view s) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string StripPlus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const std::string_view s = Trim(text);
  const auto slash = s.find('/');
  const auto dot = s.find('.');
  Rational out;
  if (slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!IsInteger(num) || !IsInteger(den) || den[0] == '-' ||
        den[0] == '+') {
      throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    mpz_class n(StripPlus(num), 10), d(StripPlus(den), 10);
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    out = Rational(n, d);
  } else if (dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
      negative = whole[0] == '-';
      whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) {
      throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    if ((!whole.empty() && !IsInteger(whole)) ||
        (!frac.empty() && !IsInteger(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) ||
        (!whole.empty() && (whole[0] == '-' || whole[0] == '+'))) {
      throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = Rational(negative ? mpz_class(-digits) : digits, scale);
  } else {
    if (!IsInteger(s)) {
      throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    out = Rational(mpz_class(StripPlus(s), 10), 1);
  }
  out.canonicalize();
  return out;
}

std::string FormatRational(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

}  // namespace dcbb
