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

#ifndef DCBB_ERRORS_H_
#define DCBB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcbb {

// Root of every error the library throws. Callers that need to tell failure
// modes apart catch the concrete subclasses below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vectors of different lengths were combined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument violates a documented precondition (odd m, bad ordering, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A black-box or feasibility oracle ran out of its query budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A query fell outside the allowed Hamming radius around the center input.
class RestrictionViolation : public Error {
 public:
  using Error::Error;
};

// An algorithm returned an allocation that is not in the feasibility set.
// Only raised when output checking is switched on.
class InfeasibleOutput : public Error {
 public:
  using Error::Error;
};

// Malformed document or configuration. Carries the 1-based line number and
// the offending field when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0,
             std::string field = {})
      : Error(Format(message, line, field)),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string Format(const std::string& message, std::size_t line,
                            const std::string& field) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "field '" + field + "': ";
    return out + message;
  }

  std::size_t line_;
  std::string field_;
};

}  // namespace dcbb

#endif  // DCBB_ERRORS_H_
