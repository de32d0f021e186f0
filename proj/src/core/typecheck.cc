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

#include "luck/core/typecheck.h"

#include <string>

#include "luck/core/program.h"
#include "luck/support/error.h"

namespace luck {
namespace {

std::string where(const Expr& e) {
  std::string s = to_sexpr(e);
  if (s.size() > 120) s = s.substr(0, 117) + "...";
  return s;
}

[[noreturn]] void fail(const Expr& e, const std::string& what) {
  throw TypeError(what + " in " + where(e));
}

void expect(const Expr& e, Type got, Type want, const char* what) {
  if (got != want) {
    fail(e, std::string(what) + ": expected " + type_to_string(want) +
                ", got " + type_to_string(got));
  }
}

bool is_weight_type(Type t) { return t == int_type() || t == nat_type(); }

class Checker {
 public:
  explicit Checker(const TypingEnv& env)
      : vars_(env.vars), unknowns_(env.unknowns) {}

  ExprPtr check(const ExprPtr& ep) {
    const Expr& e = *ep;
    auto out = std::make_shared<Expr>(e);
    switch (e.kind) {
      case ExprKind::kVar:
        if (e.index >= vars_.size()) fail(e, "unbound variable");
        out->type = vars_[vars_.size() - 1 - e.index];
        break;
      case ExprKind::kUnit:
        out->type = unit_type();
        break;
      case ExprKind::kInt:
        out->type = int_type();
        break;
      case ExprKind::kLam: {
        if (e.annot == nullptr || e.annot->kind != TypeKind::kArrow) {
          fail(e, "lambda needs an arrow annotation");
        }
        vars_.push_back(e.annot);
        vars_.push_back(e.annot->left);
        out->a = check(e.a);
        vars_.pop_back();
        vars_.pop_back();
        expect(e, out->a->type, e.annot->right, "lambda body");
        out->type = e.annot;
        break;
      }
      case ExprKind::kApp: {
        out->a = check(e.a);
        out->b = check(e.b);
        Type f = out->a->type;
        if (f->kind != TypeKind::kArrow) fail(e, "applying a non-function");
        expect(e, out->b->type, f->left, "argument");
        out->type = f->right;
        break;
      }
      case ExprKind::kPair:
        out->a = check(e.a);
        out->b = check(e.b);
        out->type = prod_type(out->a->type, out->b->type);
        break;
      case ExprKind::kCasePair: {
        out->a = check(e.a);
        Type t = out->a->type;
        if (t->kind != TypeKind::kProd) fail(e, "pair case on a non-pair");
        vars_.push_back(t->left);
        vars_.push_back(t->right);
        out->b = check(e.b);
        vars_.pop_back();
        vars_.pop_back();
        out->type = out->b->type;
        break;
      }
      case ExprKind::kInl:
      case ExprKind::kInr: {
        if (e.annot == nullptr || e.annot->kind != TypeKind::kSum) {
          fail(e, "injection needs a sum annotation");
        }
        out->a = check(e.a);
        expect(e, out->a->type,
               e.kind == ExprKind::kInl ? e.annot->left : e.annot->right,
               "injection");
        out->type = e.annot;
        break;
      }
      case ExprKind::kCase: {
        out->a = check(e.a);
        Type t = out->a->type;
        if (t->kind != TypeKind::kSum) fail(e, "case on a non-sum");
        vars_.push_back(t->left);
        out->b = check(e.b);
        vars_.pop_back();
        vars_.push_back(t->right);
        out->c = check(e.c);
        vars_.pop_back();
        expect(e, out->c->type, out->b->type, "case branches");
        out->type = out->b->type;
        break;
      }
      case ExprKind::kFold:
      case ExprKind::kUnfold: {
        if (e.annot == nullptr || e.annot->kind != TypeKind::kMu) {
          fail(e, "fold needs a recursive type annotation");
        }
        out->a = check(e.a);
        if (e.kind == ExprKind::kFold) {
          expect(e, out->a->type, unfold_type(e.annot), "fold");
          out->type = e.annot;
        } else {
          expect(e, out->a->type, e.annot, "unfold");
          out->type = unfold_type(e.annot);
        }
        break;
      }
      case ExprKind::kUnknown: {
        auto it = unknowns_.find(e.index);
        if (it == unknowns_.end()) fail(e, "unknown not in the typing map");
        if (!is_arrow_free(it->second)) fail(e, "unknown with arrow type");
        out->type = it->second;
        break;
      }
      case ExprKind::kInst: {
        out->a = check(e.a);
        out->b = check(e.b);
        out->c = check(e.c);
        Type t = out->a->type;
        if (t->kind != TypeKind::kSum || !is_arrow_free(t)) {
          fail(e, "instantiation of a non-sum or functional value");
        }
        if (!is_weight_type(out->b->type) || !is_weight_type(out->c->type)) {
          fail(e, "instantiation weights must be naturals");
        }
        out->type = t;
        break;
      }
      case ExprKind::kBang:
        out->a = check(e.a);
        if (!is_arrow_free(out->a->type)) fail(e, "sample of a function");
        out->type = out->a->type;
        break;
      case ExprKind::kAfter:
        out->a = check(e.a);
        out->b = check(e.b);
        out->type = out->a->type;
        break;
      case ExprKind::kGlobal:
        if (e.global == nullptr || e.global->type == nullptr) {
          fail(e, "unresolved global");
        }
        out->type = e.global->type;
        break;
      case ExprKind::kArith:
        out->a = check(e.a);
        out->b = check(e.b);
        expect(e, out->a->type, int_type(), "arithmetic");
        expect(e, out->b->type, int_type(), "arithmetic");
        out->type = int_type();
        break;
      case ExprKind::kCompare:
        out->a = check(e.a);
        out->b = check(e.b);
        expect(e, out->a->type, int_type(), "comparison");
        expect(e, out->b->type, int_type(), "comparison");
        out->type = bool_type();
        break;
      case ExprKind::kFail:
        if (e.annot == nullptr) fail(e, "fail needs a type");
        out->type = e.annot;
        break;
    }
    return out;
  }

 private:
  std::vector<Type> vars_;
  const std::map<uint32_t, Type>& unknowns_;
};

}  // namespace

Type typecheck(const TypingEnv& env, const Expr& e) {
  Checker checker(env);
  ExprPtr holder(std::shared_ptr<const Expr>(), &e);
  return checker.check(holder)->type;
}

ExprPtr annotate(const TypingEnv& env, const ExprPtr& e) {
  Checker checker(env);
  return checker.check(e);
}

}  // namespace luck
