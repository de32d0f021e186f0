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

#include <gtest/gtest.h>

#include "luck/core/expr.h"
#include "luck/core/program.h"
#include "luck/core/type.h"
#include "luck/core/typecheck.h"
#include "luck/core/value.h"
#include "luck/eval/predicate.h"
#include "luck/support/error.h"

namespace luck {
namespace {

using namespace build;

TEST(Types, InterningGivesPointerEquality) {
  EXPECT_EQ(sum_type(unit_type(), unit_type()), bool_type());
  EXPECT_EQ(mu_type(sum_type(unit_type(), type_var(0))), nat_type());
  EXPECT_NE(prod_type(int_type(), unit_type()),
            prod_type(unit_type(), int_type()));
  EXPECT_TRUE(is_arrow_free(nat_type()));
  EXPECT_FALSE(is_arrow_free(prod_type(unit_type(),
                                       arrow_type(unit_type(), unit_type()))));
}

TEST(Types, UnfoldSubstitutesTheMu) {
  const Type nat = nat_type();
  EXPECT_EQ(unfold_type(nat), sum_type(unit_type(), nat));
  EXPECT_EQ(type_to_string(nat), "(mu (1 + X0))");
}

TEST(Typecheck, InjectionAndAfter) {
  EXPECT_EQ(typecheck({}, *inl(bool_type(), unit())), bool_type());
  TypingEnv env;
  env.unknowns[0] = nat_type();
  EXPECT_EQ(typecheck(env, *after(unknown(0), bang(unknown(0)))), nat_type());
}

TEST(Typecheck, RejectsArrowUnknownsAndArrowSamples) {
  TypingEnv env;
  env.unknowns[0] = arrow_type(unit_type(), unit_type());
  EXPECT_THROW(typecheck(env, *unknown(0)), TypeError);
  const Type id = arrow_type(unit_type(), unit_type());
  EXPECT_THROW(typecheck({}, *bang(lam("f", "x", id, var(0)))), TypeError);
}

TEST(Typecheck, RejectsMismatches) {
  EXPECT_THROW(typecheck({}, *inl(bool_type(), int_lit(1))), TypeError);
  EXPECT_THROW(typecheck({}, *case_of(unit(), "a", unit(), "b", unit())),
               TypeError);
  EXPECT_THROW(typecheck({}, *var(0)), TypeError);
  // Instantiation weights are naturals.
  EXPECT_THROW(typecheck({}, *inst(true_expr(), unit(), nat_lit(1))),
               TypeError);
  EXPECT_EQ(typecheck({}, *inst(true_expr(), nat_lit(1), int_lit(2))),
            bool_type());
}

TEST(Typecheck, AnnotateIsStable) {
  const Type t = arrow_type(nat_type(), nat_type());
  ExprPtr e = app(lam("f", "x", t, fold(nat_type(), inr(unfold_type(nat_type()),
                                                        var(0)))),
                  nat_lit(2));
  ExprPtr a = annotate({}, e);
  EXPECT_EQ(a->type, nat_type());
  ExprPtr again = annotate({}, a);
  EXPECT_EQ(to_sexpr(*a, true), to_sexpr(*again, true));
}

TEST(Patterns, Grammar) {
  const Type t = sum_type(unit_type(), unit_type());
  EXPECT_TRUE(is_pattern(*inr(t, unknown(0))));
  const Type id = arrow_type(unit_type(), unit_type());
  EXPECT_FALSE(is_pattern(*lam("f", "x", id, var(0))));
  const Type n = nat_type();
  EXPECT_TRUE(is_pattern(*fold(n, inl(unfold_type(n), unit()))));
  EXPECT_TRUE(is_pattern(*pair(unknown(1), inl(t, unit()))));
}

TEST(PredEval, BangAndAfterAreTransparent) {
  ValuePtr v = pred_eval(*bang(true_expr()));
  EXPECT_TRUE(values_equal(*v, *val::true_value()));
  ValuePtr w = pred_eval(*after(nat_lit(0), nat_lit(1)));
  EXPECT_EQ(nat_denote(*w), 0u);
}

TEST(PredEval, InstRequiresPositiveWeights) {
  EXPECT_TRUE(values_equal(*pred_eval(*inst(true_expr(), nat_lit(1),
                                             nat_lit(2))),
                           *val::true_value()));
  EXPECT_THROW(pred_eval(*inst(true_expr(), nat_lit(0), nat_lit(2))),
               RuntimeError);
}

TEST(PredEval, NatDenote) {
  EXPECT_EQ(nat_denote(*val::nat(0)), 0u);
  EXPECT_EQ(nat_denote(*val::nat(1)), 1u);
  EXPECT_EQ(nat_denote(*pred_eval(*nat_lit(3))), 3u);
  EXPECT_EQ(nat_denote(*val::integer(7)), 7u);
}

TEST(PredEval, FuelRunsOut) {
  // rec f x. f x applied to ()
  const Type t = arrow_type(unit_type(), unit_type());
  ExprPtr loop = app(lam("f", "x", t, app(var(1), var(0))), unit());
  EXPECT_THROW(pred_eval(*loop, 1000), FuelExhausted);
}

TEST(PredEval, Arithmetic) {
  EXPECT_EQ(pred_eval(*arith(ArithOp::kDiv, int_lit(-7), int_lit(2)))->number,
            -4);
  EXPECT_THROW(pred_eval(*arith(ArithOp::kDiv, int_lit(1), int_lit(0))),
               RuntimeError);
  EXPECT_TRUE(values_equal(
      *pred_eval(*compare(CmpOp::kLt, int_lit(1), int_lit(2))),
      *val::true_value()));
}

TEST(Program, GlobalsAreRecursive) {
  // even : nat -> bool by structural recursion through a global.
  CoreProgram p;
  GlobalDef* even = p.add("even");
  const Type n = nat_type();
  even->type = arrow_type(n, bool_type());
  ExprPtr body = case_of(
      unfold(n, var(0)), "z", true_expr(), "m",
      case_of(app(global(even), var(0)), "a", false_expr(), "b", true_expr()));
  even->body = lam("even", "n", even->type, body);
  p.finalize();
  EXPECT_TRUE(values_equal(*pred_eval(*app(global(even), nat_lit(4))),
                           *val::true_value()));
  EXPECT_TRUE(values_equal(*pred_eval(*app(global(even), nat_lit(3))),
                           *val::false_value()));
  EXPECT_THROW(p.add("even"), TypeError);
}

TEST(Values, SubstituteUnknowns) {
  ExprPtr e = pair(unknown(0), unknown(1));
  Valuation s{{0, val::integer(3)}, {1, val::true_value()}};
  TypingEnv env;
  env.unknowns[0] = int_type();
  env.unknowns[1] = bool_type();
  ExprPtr typed = annotate(env, e);
  ValuePtr v = pred_eval(*substitute_unknowns(typed, s));
  EXPECT_EQ(value_to_string(*v), "(3, (inl ()))");
}

}  // namespace
}  // namespace luck
