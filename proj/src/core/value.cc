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

#include "luck/core/value.h"

#include <sstream>

#include "luck/support/error.h"

namespace luck {
namespace val {
namespace {

std::shared_ptr<Value> make(ValueKind kind) {
  auto v = std::make_shared<Value>();
  v->kind = kind;
  return v;
}

}  // namespace

ValuePtr unit() {
  static const ValuePtr v = make(ValueKind::kUnit);
  return v;
}

ValuePtr integer(int64_t n) {
  auto v = make(ValueKind::kInt);
  v->number = n;
  return v;
}

ValuePtr pair(ValuePtr a, ValuePtr b) {
  auto v = make(ValueKind::kPair);
  v->a = std::move(a);
  v->b = std::move(b);
  return v;
}

ValuePtr inl(Type sum, ValuePtr inner) {
  auto v = make(ValueKind::kInl);
  v->type = sum;
  v->a = std::move(inner);
  return v;
}

ValuePtr inr(Type sum, ValuePtr inner) {
  auto v = make(ValueKind::kInr);
  v->type = sum;
  v->a = std::move(inner);
  return v;
}

ValuePtr fold(Type mu, ValuePtr inner) {
  auto v = make(ValueKind::kFold);
  v->type = mu;
  v->a = std::move(inner);
  return v;
}

ValuePtr unknown(uint32_t id) {
  auto v = make(ValueKind::kUnknown);
  v->unknown = id;
  return v;
}

ValuePtr closure(const Expr* lam, EnvPtr env) {
  auto v = make(ValueKind::kClosure);
  v->lam = lam;
  v->env = std::move(env);
  return v;
}

ValuePtr true_value() {
  static const ValuePtr v = inl(bool_type(), unit());
  return v;
}

ValuePtr false_value() {
  static const ValuePtr v = inr(bool_type(), unit());
  return v;
}

ValuePtr nat(uint64_t n) {
  Type mu = nat_type();
  Type body = unfold_type(mu);
  ValuePtr v = fold(mu, inl(body, unit()));
  for (uint64_t i = 0; i < n; ++i) v = fold(mu, inr(body, v));
  return v;
}

}  // namespace val

const ValuePtr& env_lookup(const EnvPtr& env, uint32_t index) {
  const EnvNode* node = env.get();
  for (uint32_t i = 0; i < index && node != nullptr; ++i) {
    node = node->next.get();
  }
  if (node == nullptr) throw ContractViolation("unbound variable");
  return node->value;
}

bool is_pattern(const Value& v) {
  switch (v.kind) {
    case ValueKind::kClosure:
      return false;
    case ValueKind::kPair:
      return is_pattern(*v.a) && is_pattern(*v.b);
    case ValueKind::kInl:
    case ValueKind::kInr:
    case ValueKind::kFold:
      return is_pattern(*v.a);
    default:
      return true;
  }
}

bool has_unknowns(const Value& v) {
  switch (v.kind) {
    case ValueKind::kUnknown:
      return true;
    case ValueKind::kPair:
      return has_unknowns(*v.a) || has_unknowns(*v.b);
    case ValueKind::kInl:
    case ValueKind::kInr:
    case ValueKind::kFold:
      return has_unknowns(*v.a);
    default:
      return false;
  }
}

int compare_values(const Value& a, const Value& b) {
  if (&a == &b) return 0;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case ValueKind::kUnit:
      return 0;
    case ValueKind::kInt:
      return a.number < b.number ? -1 : a.number > b.number ? 1 : 0;
    case ValueKind::kUnknown:
      return a.unknown < b.unknown ? -1 : a.unknown > b.unknown ? 1 : 0;
    case ValueKind::kPair: {
      int c = compare_values(*a.a, *b.a);
      return c != 0 ? c : compare_values(*a.b, *b.b);
    }
    case ValueKind::kInl:
    case ValueKind::kInr:
    case ValueKind::kFold:
      return compare_values(*a.a, *b.a);
    case ValueKind::kClosure:
      return a.lam < b.lam ? -1 : a.lam > b.lam ? 1 : 0;
  }
  return 0;
}

namespace {

void print(std::ostream& os, const Value& v) {
  switch (v.kind) {
    case ValueKind::kUnit:
      os << "()";
      return;
    case ValueKind::kInt:
      os << v.number;
      return;
    case ValueKind::kUnknown:
      os << "?u" << v.unknown;
      return;
    case ValueKind::kPair:
      os << "(";
      print(os, *v.a);
      os << ", ";
      print(os, *v.b);
      os << ")";
      return;
    case ValueKind::kInl:
    case ValueKind::kInr:
    case ValueKind::kFold:
      os << (v.kind == ValueKind::kInl   ? "(inl "
             : v.kind == ValueKind::kInr ? "(inr "
                                         : "(fold ");
      print(os, *v.a);
      os << ")";
      return;
    case ValueKind::kClosure:
      os << "<closure>";
      return;
  }
}

}  // namespace

std::string value_to_string(const Value& v) {
  std::ostringstream os;
  print(os, v);
  return os.str();
}

ExprPtr value_to_expr(const Value& v) {
  switch (v.kind) {
    case ValueKind::kUnit:
      return build::unit();
    case ValueKind::kInt:
      return build::int_lit(v.number);
    case ValueKind::kUnknown:
      return build::unknown(v.unknown);
    case ValueKind::kPair:
      return build::pair(value_to_expr(*v.a), value_to_expr(*v.b));
    case ValueKind::kInl:
      return build::inl(v.type, value_to_expr(*v.a));
    case ValueKind::kInr:
      return build::inr(v.type, value_to_expr(*v.a));
    case ValueKind::kFold:
      return build::fold(v.type, value_to_expr(*v.a));
    case ValueKind::kClosure:
      break;
  }
  throw ContractViolation("closures have no expression form here");
}

uint64_t nat_denote(const Value& v) {
  if (v.kind == ValueKind::kInt) {
    if (v.number < 0) throw RuntimeError("negative weight");
    return static_cast<uint64_t>(v.number);
  }
  uint64_t n = 0;
  const Value* cur = &v;
  for (;;) {
    if (cur->kind != ValueKind::kFold) {
      throw ContractViolation("nat_denote: not a natural number");
    }
    const Value& inner = *cur->a;
    if (inner.kind == ValueKind::kInl && inner.a->kind == ValueKind::kUnit) {
      return n;
    }
    if (inner.kind != ValueKind::kInr) {
      throw ContractViolation("nat_denote: not a natural number");
    }
    ++n;
    cur = inner.a.get();
  }
}

int compare_valuations(const Valuation& a, const Valuation& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    int c = compare_values(*ia->second, *ib->second);
    if (c != 0) return c;
  }
  if (ia == a.end() && ib == b.end()) return 0;
  return ia == a.end() ? -1 : 1;
}

std::string valuation_to_string(const Valuation& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [u, v] : s) {
    if (!first) os << ", ";
    first = false;
    os << "?u" << u << " = " << value_to_string(*v);
  }
  os << "}";
  return os.str();
}

ValuePtr substitute_unknowns(const ValuePtr& v, const Valuation& s) {
  switch (v->kind) {
    case ValueKind::kUnknown: {
      auto it = s.find(v->unknown);
      return it == s.end() ? v : it->second;
    }
    case ValueKind::kPair:
      return val::pair(substitute_unknowns(v->a, s),
                       substitute_unknowns(v->b, s));
    case ValueKind::kInl:
      return val::inl(v->type, substitute_unknowns(v->a, s));
    case ValueKind::kInr:
      return val::inr(v->type, substitute_unknowns(v->a, s));
    case ValueKind::kFold:
      return val::fold(v->type, substitute_unknowns(v->a, s));
    default:
      return v;
  }
}

ExprPtr substitute_unknowns(const ExprPtr& e, const Valuation& s) {
  if (e->kind == ExprKind::kUnknown) {
    auto it = s.find(e->index);
    if (it == s.end()) return e;
    return value_to_expr(*it->second);
  }
  if (!e->a && !e->b && !e->c) return e;
  auto out = std::make_shared<Expr>(*e);
  if (e->a) out->a = substitute_unknowns(e->a, s);
  if (e->b) out->b = substitute_unknowns(e->b, s);
  if (e->c) out->c = substitute_unknowns(e->c, s);
  return out;
}

}  // namespace luck
