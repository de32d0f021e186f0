// Copyright 2026 The Luck Generator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LUCK_SUPPORT_ERROR_H_
#define LUCK_SUPPORT_ERROR_H_

#include <stdexcept>
#include <string>

namespace luck {

// Base class of all user-facing errors (bad programs, bad queries, runtime
// failures of the predicate semantics).
class LuckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public LuckError {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : LuckError(std::to_string(line) + ":" + std::to_string(column) + ": " +
                  message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class TypeError : public LuckError {
 public:
  using LuckError::LuckError;
};

// Evaluation got stuck: non-positive weight, division by zero, a failing
// match in the predicate semantics, non-linear arithmetic on unknowns.
class RuntimeError : public LuckError {
 public:
  using LuckError::LuckError;
};

// The step budget ran out. Distinct from a semantic failure.
class FuelExhausted : public LuckError {
 public:
  FuelExhausted() : LuckError("fuel exhausted") {}
};

// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace luck

#endif  // LUCK_SUPPORT_ERROR_H_
