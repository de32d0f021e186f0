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

#ifndef LUCK_CORE_VALUE_H_
#define LUCK_CORE_VALUE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "luck/core/expr.h"
#include "luck/core/type.h"

namespace luck {

enum class ValueKind : uint8_t {
  kUnit, kInt, kPair, kInl, kInr, kFold, kClosure, kUnknown
};

struct Value;
struct EnvNode;
using ValuePtr = std::shared_ptr<const Value>;
using EnvPtr = std::shared_ptr<const EnvNode>;

// Runtime values. Without unknowns and closures they are the closed
// non-functional values; with unknowns they are patterns.
struct Value {
  ValueKind kind;
  uint32_t unknown = 0;
  int64_t number = 0;
  Type type = nullptr;  // the sum for inl/inr, the mu for fold
  ValuePtr a, b;
  const Expr* lam = nullptr;  // closure code
  EnvPtr env;                 // closure environment
};

struct EnvNode {
  ValuePtr value;
  EnvPtr next;
};

namespace val {

ValuePtr unit();
ValuePtr integer(int64_t n);
ValuePtr pair(ValuePtr a, ValuePtr b);
ValuePtr inl(Type sum, ValuePtr v);
ValuePtr inr(Type sum, ValuePtr v);
ValuePtr fold(Type mu, ValuePtr v);
ValuePtr unknown(uint32_t id);
ValuePtr closure(const Expr* lam, EnvPtr env);
ValuePtr true_value();
ValuePtr false_value();
ValuePtr nat(uint64_t n);

}  // namespace val

inline EnvPtr env_push(EnvPtr env, ValuePtr v) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(v), std::move(env)});
}
const ValuePtr& env_lookup(const EnvPtr& env, uint32_t index);

bool is_pattern(const Value& v);
bool has_unknowns(const Value& v);

// Structural total order over closure-free values.
int compare_values(const Value& a, const Value& b);
inline bool values_equal(const Value& a, const Value& b) {
  return compare_values(a, b) == 0;
}
struct ValueLess {
  bool operator()(const ValuePtr& a, const ValuePtr& b) const {
    return compare_values(*a, *b) < 0;
  }
};

// Core rendering: (), 3, (a, b), inl v, fold v, ?u7.
std::string value_to_string(const Value& v);

// The closed expression denoting a closure-free value.
ExprPtr value_to_expr(const Value& v);

// Peano denotation: fold (inl ()) is 0, fold (inr v) is 1 + v. Integers
// denote themselves.
uint64_t nat_denote(const Value& v);

using Valuation = std::map<uint32_t, ValuePtr>;
int compare_valuations(const Valuation& a, const Valuation& b);
struct ValuationLess {
  bool operator()(const Valuation& a, const Valuation& b) const {
    return compare_valuations(a, b) < 0;
  }
};
std::string valuation_to_string(const Valuation& s);

// Replaces unknowns by their values in the valuation.
ExprPtr substitute_unknowns(const ExprPtr& e, const Valuation& s);
ValuePtr substitute_unknowns(const ValuePtr& v, const Valuation& s);

}  // namespace luck

#endif  // LUCK_CORE_VALUE_H_
