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

#ifndef LUCK_CORE_EXPR_H_
#define LUCK_CORE_EXPR_H_

#include <cstdint>
#include <memory>
#include <string>

#include "luck/core/type.h"

namespace luck {

enum class ExprKind : uint8_t {
  kVar,       // de Bruijn index
  kUnit,
  kInt,       // primitive integer literal
  kLam,       // rec f x. body; x is index 0, f is index 1
  kApp,
  kPair,
  kCasePair,  // case a of (x, y) -> b; y is index 0, x is index 1
  kInl,
  kInr,
  kCase,      // case a of inl x -> b | inr y -> c
  kFold,
  kUnfold,
  kUnknown,
  kInst,      // a <- (b, c)
  kBang,      // !a
  kAfter,     // a ;` b
  kGlobal,    // reference to a top-level definition
  kArith,     // a op b on Int
  kCompare,   // a op b on Int, result 1 + 1
  kFail,      // a match that never succeeds
};

enum class ArithOp : uint8_t { kAdd, kSub, kMul, kDiv, kMod };
enum class CmpOp : uint8_t { kEq, kNe, kLt, kLe, kGt, kGe };

CmpOp negate(CmpOp op);
// a op b  <=>  b (flip op) a
CmpOp flip(CmpOp op);
bool compare_ints(CmpOp op, int64_t a, int64_t b);
const char* to_string(CmpOp op);
const char* to_string(ArithOp op);
// Checked integer arithmetic; / and % round toward negative infinity.
// Throws RuntimeError on overflow or division by zero.
int64_t apply_arith(ArithOp op, int64_t a, int64_t b);

struct GlobalDef;
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  uint8_t op = 0;                   // ArithOp or CmpOp
  bool narrow_discriminee = false;  // kCase: narrow the scrutinee first
  uint32_t index = 0;               // kVar index, kUnknown id
  int64_t value = 0;                // kInt
  Type annot = nullptr;  // inl/inr: the sum; fold/unfold: the mu;
                         // lam: the arrow; fail: its type
  Type type = nullptr;   // filled in by typecheck
  ExprPtr a, b, c;
  std::string name1, name2;  // binder names, for printing only
  const GlobalDef* global = nullptr;
};

namespace build {

ExprPtr var(uint32_t index, std::string name = "");
ExprPtr unit();
ExprPtr int_lit(int64_t value);
ExprPtr lam(std::string f, std::string x, Type arrow, ExprPtr body);
ExprPtr app(ExprPtr fn, ExprPtr arg);
ExprPtr pair(ExprPtr left, ExprPtr right);
ExprPtr case_pair(ExprPtr scrutinee, std::string x, std::string y,
                  ExprPtr body);
ExprPtr inl(Type sum, ExprPtr e);
ExprPtr inr(Type sum, ExprPtr e);
ExprPtr case_of(ExprPtr scrutinee, std::string x, ExprPtr left, std::string y,
                ExprPtr right, bool narrow_discriminee = false);
ExprPtr fold(Type mu, ExprPtr e);
ExprPtr unfold(Type mu, ExprPtr e);
ExprPtr unknown(uint32_t id);
ExprPtr inst(ExprPtr e, ExprPtr left_weight, ExprPtr right_weight);
ExprPtr bang(ExprPtr e);
ExprPtr after(ExprPtr first, ExprPtr second);
ExprPtr global(const GlobalDef* def);
ExprPtr arith(ArithOp op, ExprPtr left, ExprPtr right);
ExprPtr compare(CmpOp op, ExprPtr left, ExprPtr right);
ExprPtr fail(Type type);

ExprPtr true_expr();   // inl ()
ExprPtr false_expr();  // inr ()
// Peano literal of type nat.
ExprPtr nat_lit(uint64_t n);

}  // namespace build

// A value built from unit, integers, pairs, injections, folds and unknowns.
bool is_pattern(const Expr& e);

// Replaces free variable 0 by the closed expression v (indices above drop).
ExprPtr instantiate(const ExprPtr& body, const ExprPtr& v);

// Stable s-expression dump; with_types adds ": type" to every node.
std::string to_sexpr(const Expr& e, bool with_types = false);

}  // namespace luck

#endif  // LUCK_CORE_EXPR_H_
