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

#include "luck/core/expr.h"

#include <sstream>
#include <utility>

#include "luck/core/program.h"
#include "luck/support/error.h"

namespace luck {

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return CmpOp::kNe;
    case CmpOp::kNe: return CmpOp::kEq;
    case CmpOp::kLt: return CmpOp::kGe;
    case CmpOp::kLe: return CmpOp::kGt;
    case CmpOp::kGt: return CmpOp::kLe;
    case CmpOp::kGe: return CmpOp::kLt;
  }
  return op;
}

CmpOp flip(CmpOp op) {
  switch (op) {
    case CmpOp::kLt: return CmpOp::kGt;
    case CmpOp::kLe: return CmpOp::kGe;
    case CmpOp::kGt: return CmpOp::kLt;
    case CmpOp::kGe: return CmpOp::kLe;
    default: return op;
  }
}

bool compare_ints(CmpOp op, int64_t a, int64_t b) {
  switch (op) {
    case CmpOp::kEq: return a == b;
    case CmpOp::kNe: return a != b;
    case CmpOp::kLt: return a < b;
    case CmpOp::kLe: return a <= b;
    case CmpOp::kGt: return a > b;
    case CmpOp::kGe: return a >= b;
  }
  return false;
}

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return "==";
    case CmpOp::kNe: return "/=";
    case CmpOp::kLt: return "<";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGt: return ">";
    case CmpOp::kGe: return ">=";
  }
  return "?";
}

const char* to_string(ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return "+";
    case ArithOp::kSub: return "-";
    case ArithOp::kMul: return "*";
    case ArithOp::kDiv: return "/";
    case ArithOp::kMod: return "%";
  }
  return "?";
}

int64_t apply_arith(ArithOp op, int64_t a, int64_t b) {
  int64_t r = 0;
  switch (op) {
    case ArithOp::kAdd:
      if (__builtin_add_overflow(a, b, &r)) throw RuntimeError("overflow");
      return r;
    case ArithOp::kSub:
      if (__builtin_sub_overflow(a, b, &r)) throw RuntimeError("overflow");
      return r;
    case ArithOp::kMul:
      if (__builtin_mul_overflow(a, b, &r)) throw RuntimeError("overflow");
      return r;
    case ArithOp::kDiv:
    case ArithOp::kMod: {
      if (b == 0) throw RuntimeError("division by zero");
      if (a == INT64_MIN && b == -1) throw RuntimeError("overflow");
      int64_t q = a / b;
      int64_t m = a % b;
      if (m != 0 && ((m < 0) != (b < 0))) {
        q -= 1;
        m += b;
      }
      return op == ArithOp::kDiv ? q : m;
    }
  }
  return r;
}

namespace build {
namespace {

std::shared_ptr<Expr> node(ExprKind kind) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  return e;
}

}  // namespace

ExprPtr var(uint32_t index, std::string name) {
  auto e = node(ExprKind::kVar);
  e->index = index;
  e->name1 = std::move(name);
  return e;
}

ExprPtr unit() {
  static const ExprPtr e = node(ExprKind::kUnit);
  return e;
}

ExprPtr int_lit(int64_t value) {
  auto e = node(ExprKind::kInt);
  e->value = value;
  return e;
}

ExprPtr lam(std::string f, std::string x, Type arrow, ExprPtr body) {
  auto e = node(ExprKind::kLam);
  e->name1 = std::move(f);
  e->name2 = std::move(x);
  e->annot = arrow;
  e->a = std::move(body);
  return e;
}

ExprPtr app(ExprPtr fn, ExprPtr arg) {
  auto e = node(ExprKind::kApp);
  e->a = std::move(fn);
  e->b = std::move(arg);
  return e;
}

ExprPtr pair(ExprPtr left, ExprPtr right) {
  auto e = node(ExprKind::kPair);
  e->a = std::move(left);
  e->b = std::move(right);
  return e;
}

ExprPtr case_pair(ExprPtr scrutinee, std::string x, std::string y,
                  ExprPtr body) {
  auto e = node(ExprKind::kCasePair);
  e->a = std::move(scrutinee);
  e->name1 = std::move(x);
  e->name2 = std::move(y);
  e->b = std::move(body);
  return e;
}

ExprPtr inl(Type sum, ExprPtr inner) {
  auto e = node(ExprKind::kInl);
  e->annot = sum;
  e->a = std::move(inner);
  return e;
}

ExprPtr inr(Type sum, ExprPtr inner) {
  auto e = node(ExprKind::kInr);
  e->annot = sum;
  e->a = std::move(inner);
  return e;
}

ExprPtr case_of(ExprPtr scrutinee, std::string x, ExprPtr left, std::string y,
                ExprPtr right, bool narrow_discriminee) {
  auto e = node(ExprKind::kCase);
  e->a = std::move(scrutinee);
  e->name1 = std::move(x);
  e->b = std::move(left);
  e->name2 = std::move(y);
  e->c = std::move(right);
  e->narrow_discriminee = narrow_discriminee;
  return e;
}

ExprPtr fold(Type mu, ExprPtr inner) {
  auto e = node(ExprKind::kFold);
  e->annot = mu;
  e->a = std::move(inner);
  return e;
}

ExprPtr unfold(Type mu, ExprPtr inner) {
  auto e = node(ExprKind::kUnfold);
  e->annot = mu;
  e->a = std::move(inner);
  return e;
}

ExprPtr unknown(uint32_t id) {
  auto e = node(ExprKind::kUnknown);
  e->index = id;
  return e;
}

ExprPtr inst(ExprPtr inner, ExprPtr left_weight, ExprPtr right_weight) {
  auto e = node(ExprKind::kInst);
  e->a = std::move(inner);
  e->b = std::move(left_weight);
  e->c = std::move(right_weight);
  return e;
}

ExprPtr bang(ExprPtr inner) {
  auto e = node(ExprKind::kBang);
  e->a = std::move(inner);
  return e;
}

ExprPtr after(ExprPtr first, ExprPtr second) {
  auto e = node(ExprKind::kAfter);
  e->a = std::move(first);
  e->b = std::move(second);
  return e;
}

ExprPtr global(const GlobalDef* def) {
  auto e = node(ExprKind::kGlobal);
  e->global = def;
  e->name1 = def->name;
  return e;
}

ExprPtr arith(ArithOp op, ExprPtr left, ExprPtr right) {
  auto e = node(ExprKind::kArith);
  e->op = static_cast<uint8_t>(op);
  e->a = std::move(left);
  e->b = std::move(right);
  return e;
}

ExprPtr compare(CmpOp op, ExprPtr left, ExprPtr right) {
  auto e = node(ExprKind::kCompare);
  e->op = static_cast<uint8_t>(op);
  e->a = std::move(left);
  e->b = std::move(right);
  return e;
}

ExprPtr fail(Type type) {
  auto e = node(ExprKind::kFail);
  e->annot = type;
  return e;
}

ExprPtr true_expr() { return inl(bool_type(), unit()); }
ExprPtr false_expr() { return inr(bool_type(), unit()); }

ExprPtr nat_lit(uint64_t n) {
  Type nat = nat_type();
  Type body = unfold_type(nat);
  ExprPtr e = fold(nat, inl(body, unit()));
  for (uint64_t i = 0; i < n; ++i) e = fold(nat, inr(body, e));
  return e;
}

}  // namespace build

bool is_pattern(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kUnit:
    case ExprKind::kInt:
    case ExprKind::kUnknown:
      return true;
    case ExprKind::kPair:
      return is_pattern(*e.a) && is_pattern(*e.b);
    case ExprKind::kInl:
    case ExprKind::kInr:
    case ExprKind::kFold:
      return is_pattern(*e.a);
    default:
      return false;
  }
}

namespace {

ExprPtr instantiate_at(const ExprPtr& e, uint32_t cutoff, const ExprPtr& v) {
  auto copy = [&](ExprPtr a, ExprPtr b, ExprPtr c) {
    auto out = std::make_shared<Expr>(*e);
    out->a = std::move(a);
    out->b = std::move(b);
    out->c = std::move(c);
    return ExprPtr(out);
  };
  auto sub = [&](const ExprPtr& child, uint32_t extra) -> ExprPtr {
    return child ? instantiate_at(child, cutoff + extra, v) : nullptr;
  };
  switch (e->kind) {
    case ExprKind::kVar:
      if (e->index == cutoff) return v;
      if (e->index > cutoff) {
        auto out = std::make_shared<Expr>(*e);
        out->index = e->index - 1;
        return out;
      }
      return e;
    case ExprKind::kUnit:
    case ExprKind::kInt:
    case ExprKind::kUnknown:
    case ExprKind::kGlobal:
    case ExprKind::kFail:
      return e;
    case ExprKind::kLam:
      return copy(sub(e->a, 2), nullptr, nullptr);
    case ExprKind::kCasePair:
      return copy(sub(e->a, 0), sub(e->b, 2), nullptr);
    case ExprKind::kCase:
      return copy(sub(e->a, 0), sub(e->b, 1), sub(e->c, 1));
    default:
      return copy(sub(e->a, 0), sub(e->b, 0), sub(e->c, 0));
  }
}

void sexpr(std::ostream& os, const Expr& e, bool types) {
  const bool wrap_atom = types;
  auto close = [&]() {
    if (types) os << " : " << (e.type ? type_to_string(e.type) : "?");
    os << ")";
  };
  switch (e.kind) {
    case ExprKind::kVar:
      if (wrap_atom) os << "(";
      os << (e.name1.empty() ? "" : e.name1) << "@" << e.index;
      if (wrap_atom) close();
      return;
    case ExprKind::kUnit:
      if (wrap_atom) os << "(";
      os << "()";
      if (wrap_atom) close();
      return;
    case ExprKind::kInt:
      if (wrap_atom) os << "(";
      os << e.value;
      if (wrap_atom) close();
      return;
    case ExprKind::kUnknown:
      if (wrap_atom) os << "(";
      os << "?u" << e.index;
      if (wrap_atom) close();
      return;
    case ExprKind::kGlobal:
      if (wrap_atom) os << "(";
      os << "$" << e.name1;
      if (wrap_atom) close();
      return;
    case ExprKind::kFail:
      os << "(fail";
      close();
      return;
    case ExprKind::kLam:
      os << "(rec " << e.name1 << " " << e.name2 << " ";
      sexpr(os, *e.a, types);
      close();
      return;
    case ExprKind::kApp:
      os << "(app ";
      sexpr(os, *e.a, types);
      os << " ";
      sexpr(os, *e.b, types);
      close();
      return;
    case ExprKind::kPair:
      os << "(pair ";
      sexpr(os, *e.a, types);
      os << " ";
      sexpr(os, *e.b, types);
      close();
      return;
    case ExprKind::kCasePair:
      os << "(case-pair ";
      sexpr(os, *e.a, types);
      os << " (" << e.name1 << " " << e.name2 << ") ";
      sexpr(os, *e.b, types);
      close();
      return;
    case ExprKind::kInl:
    case ExprKind::kInr:
    case ExprKind::kFold:
    case ExprKind::kUnfold:
    case ExprKind::kBang: {
      static const char* names[] = {"inl", "inr", "fold", "unfold", "!"};
      int k = e.kind == ExprKind::kInl     ? 0
              : e.kind == ExprKind::kInr   ? 1
              : e.kind == ExprKind::kFold  ? 2
              : e.kind == ExprKind::kUnfold ? 3
                                            : 4;
      os << "(" << names[k] << " ";
      sexpr(os, *e.a, types);
      close();
      return;
    }
    case ExprKind::kCase:
      os << (e.narrow_discriminee ? "(case! " : "(case ");
      sexpr(os, *e.a, types);
      os << " (inl " << e.name1 << " ";
      sexpr(os, *e.b, types);
      os << ") (inr " << e.name2 << " ";
      sexpr(os, *e.c, types);
      os << ")";
      close();
      return;
    case ExprKind::kInst:
      os << "(inst ";
      sexpr(os, *e.a, types);
      os << " ";
      sexpr(os, *e.b, types);
      os << " ";
      sexpr(os, *e.c, types);
      close();
      return;
    case ExprKind::kAfter:
      os << "(after ";
      sexpr(os, *e.a, types);
      os << " ";
      sexpr(os, *e.b, types);
      close();
      return;
    case ExprKind::kArith:
      os << "(" << to_string(static_cast<ArithOp>(e.op)) << " ";
      sexpr(os, *e.a, types);
      os << " ";
      sexpr(os, *e.b, types);
      close();
      return;
    case ExprKind::kCompare:
      os << "(" << to_string(static_cast<CmpOp>(e.op)) << " ";
      sexpr(os, *e.a, types);
      os << " ";
      sexpr(os, *e.b, types);
      close();
      return;
  }
}

}  // namespace

ExprPtr instantiate(const ExprPtr& body, const ExprPtr& v) {
  return instantiate_at(body, 0, v);
}

std::string to_sexpr(const Expr& e, bool with_types) {
  std::ostringstream os;
  sexpr(os, e, with_types);
  return os.str();
}

}  // namespace luck
