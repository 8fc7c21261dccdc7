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

#ifndef DCBB_RATIONAL_H_
#define DCBB_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dcbb {

// Exact arbitrary-precision rational. All welfare, ratio and payment
// arithmetic goes through this type; nothing in the library uses floating
// point for a decision.
using Rational = mpq_class;

// Parses "7", "-3", "3/2" or a plain decimal such as "0.25". The result is
// canonicalized. Throws ParseError on anything else, including a zero
// denominator.
Rational ParseRational(std::string_view text);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string FormatRational(const Rational& value);

// Convenience for building small exact constants in code and tests.
inline Rational MakeRational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace dcbb

#endif  // DCBB_RATIONAL_H_
