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

#include "luck/eval/predicate.h"

#include "luck/core/program.h"
#include "luck/support/error.h"

namespace luck {
namespace {

constexpr int kMaxDepth = 20000;

class PredicateEvaluator {
 public:
  explicit PredicateEvaluator(uint64_t fuel) : fuel_(fuel) {}

  ValuePtr eval(const Expr* e, EnvPtr env) {
    if (++depth_ > kMaxDepth) throw FuelExhausted();
    struct DepthGuard {
      int* d;
      ~DepthGuard() { --*d; }
    } guard{&depth_};
    for (;;) {
      if (++steps_ > fuel_) throw FuelExhausted();
      switch (e->kind) {
        case ExprKind::kVar:
          return env_lookup(env, e->index);
        case ExprKind::kUnit:
          return val::unit();
        case ExprKind::kInt:
          return val::integer(e->value);
        case ExprKind::kLam:
          return val::closure(e, env);
        case ExprKind::kGlobal:
          return e->global->closure;
        case ExprKind::kApp: {
          ValuePtr f = eval(e->a.get(), env);
          ValuePtr x = eval(e->b.get(), env);
          if (f->kind != ValueKind::kClosure) {
            throw RuntimeError("applying a non-function");
          }
          env = env_push(env_push(f->env, f), std::move(x));
          e = f->lam->a.get();
          continue;
        }
        case ExprKind::kPair: {
          ValuePtr a = eval(e->a.get(), env);
          ValuePtr b = eval(e->b.get(), env);
          return val::pair(std::move(a), std::move(b));
        }
        case ExprKind::kCasePair: {
          ValuePtr v = eval(e->a.get(), env);
          if (v->kind != ValueKind::kPair) stuck(v);
          env = env_push(env_push(std::move(env), v->a), v->b);
          e = e->b.get();
          continue;
        }
        case ExprKind::kInl:
          return val::inl(e->annot, eval(e->a.get(), env));
        case ExprKind::kInr:
          return val::inr(e->annot, eval(e->a.get(), env));
        case ExprKind::kFold:
          return val::fold(e->annot, eval(e->a.get(), env));
        case ExprKind::kUnfold: {
          ValuePtr v = eval(e->a.get(), env);
          if (v->kind != ValueKind::kFold) stuck(v);
          return v->a;
        }
        case ExprKind::kCase: {
          ValuePtr v = eval(e->a.get(), env);
          if (v->kind == ValueKind::kInl) {
            env = env_push(std::move(env), v->a);
            e = e->b.get();
          } else if (v->kind == ValueKind::kInr) {
            env = env_push(std::move(env), v->a);
            e = e->c.get();
          } else {
            stuck(v);
          }
          continue;
        }
        case ExprKind::kUnknown:
          throw RuntimeError("unknown in the predicate semantics");
        case ExprKind::kInst: {
          ValuePtr v = eval(e->a.get(), env);
          ValuePtr w1 = eval(e->b.get(), env);
          ValuePtr w2 = eval(e->c.get(), env);
          if (weight(*w1) == 0 || weight(*w2) == 0) {
            throw RuntimeError("instantiation weight must be positive");
          }
          return v;
        }
        case ExprKind::kBang:
          e = e->a.get();
          continue;
        case ExprKind::kAfter: {
          ValuePtr v = eval(e->a.get(), env);
          eval(e->b.get(), env);
          return v;
        }
        case ExprKind::kArith: {
          ValuePtr a = eval(e->a.get(), env);
          ValuePtr b = eval(e->b.get(), env);
          if (a->kind != ValueKind::kInt) stuck(a);
          if (b->kind != ValueKind::kInt) stuck(b);
          return val::integer(
              apply_arith(static_cast<ArithOp>(e->op), a->number, b->number));
        }
        case ExprKind::kCompare: {
          ValuePtr a = eval(e->a.get(), env);
          ValuePtr b = eval(e->b.get(), env);
          if (a->kind != ValueKind::kInt) stuck(a);
          if (b->kind != ValueKind::kInt) stuck(b);
          return compare_ints(static_cast<CmpOp>(e->op), a->number, b->number)
                     ? val::true_value()
                     : val::false_value();
        }
        case ExprKind::kFail:
          throw RuntimeError("match failure");
      }
    }
  }

 private:
  static uint64_t weight(const Value& w) {
    if (w.kind == ValueKind::kInt && w.number < 0) return 0;
    return nat_denote(w);
  }

  [[noreturn]] static void stuck(const ValuePtr& v) {
    throw RuntimeError("evaluation stuck on " + value_to_string(*v));
  }

  uint64_t fuel_;
  uint64_t steps_ = 0;
  int depth_ = 0;
};

}  // namespace

ValuePtr pred_eval(const Expr& e, uint64_t fuel) {
  return pred_eval(e, nullptr, fuel);
}

ValuePtr pred_eval(const Expr& e, const EnvPtr& env, uint64_t fuel) {
  PredicateEvaluator evaluator(fuel);
  return evaluator.eval(&e, env);
}

}  // namespace luck
