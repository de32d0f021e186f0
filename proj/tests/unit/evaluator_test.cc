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

#include <map>
#include <set>

#include "luck/constraints/denote.h"
#include "luck/core/program.h"
#include "luck/core/typecheck.h"
#include "luck/eval/evaluator.h"
#include "luck/support/error.h"

namespace luck {
namespace {

using namespace build;

ExprPtr typed(const ConstraintSet& k, const ExprPtr& e) {
  TypingEnv env;
  for (uint32_t u : k.unknowns()) env.unknowns[u] = k.type_of(u);
  return annotate(env, e);
}

ExprPtr and_(ExprPtr a, ExprPtr b) {
  return case_of(std::move(a), "", std::move(b), "", false_expr());
}

ExprPtr lt(ExprPtr a, ExprPtr b) {
  return compare(CmpOp::kLt, std::move(a), std::move(b));
}

// (0 < u && u < 4) !u and ((0 < u) !u) && u < 4
ExprPtr expr_a(uint32_t u) {
  return after(and_(lt(int_lit(0), unknown(u)), lt(unknown(u), int_lit(4))),
               bang(unknown(u)));
}
ExprPtr expr_b(uint32_t u) {
  return and_(after(lt(int_lit(0), unknown(u)), bang(unknown(u))),
              lt(unknown(u), int_lit(4)));
}

struct Row {
  std::optional<int64_t> u;  // nullopt: empty outcome
  std::vector<std::pair<uint32_t, uint32_t>> script;
  mpq_class q;
};

std::vector<Row> enumerate_match(const ExprPtr& e, const ConstraintSet& k,
                                 uint32_t u) {
  std::vector<Row> rows;
  EnumeratingChoices choices;
  do {
    MatchOutcome m = match_eval(*e, val::true_value(), k, choices);
    Row r;
    if (m.result) r.u = m.result->int_value(u);
    r.script = m.trace.script();
    r.q = m.trace.probability();
    rows.push_back(r);
  } while (choices.advance());
  return rows;
}

TEST(Narrow, ValueIsItself) {
  ConstraintSet k = ConstraintSet(0, 3);
  const uint32_t u = k.fresh(int_type());
  RandomChoices rng(1);
  auto out = narrow(*typed(k, unknown(u)), k, rng);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->value->kind, ValueKind::kUnknown);
  EXPECT_EQ(out->value->unknown, u);
  EXPECT_TRUE(out->trace.empty());
  EXPECT_EQ(out->trace.probability(), 1);
}

TEST(Narrow, BangPinsUniformly) {
  ConstraintSet k = ConstraintSet(1, 3);
  const uint32_t u = k.fresh(int_type());
  const ExprPtr e = typed(k, bang(unknown(u)));
  EnumeratingChoices choices;
  std::set<int64_t> seen;
  mpq_class total = 0;
  do {
    auto out = narrow(*e, k, choices);
    ASSERT_TRUE(out.has_value());
    ASSERT_EQ(out->trace.size(), 1u);
    EXPECT_EQ(out->trace.choices()[0].arity, 3u);
    EXPECT_EQ(out->trace.probability(), mpq_class(1, 3));
    seen.insert(*out->kappa.int_value(u));
    total += out->trace.probability();
  } while (choices.advance());
  EXPECT_EQ(seen, (std::set<int64_t>{1, 2, 3}));
  EXPECT_EQ(total, 1);
}

TEST(Narrow, ConjunctionSucceedsAQuarterOfTheTime) {
  ConstraintSet k;
  const uint32_t a = k.fresh(bool_type());
  const uint32_t b = k.fresh(bool_type());
  const uint32_t c = k.fresh(bool_type());
  // Plain narrowing of a case on an unknown chooses a side 1:1.
  const ExprPtr e =
      typed(k, and_(unknown(a), and_(unknown(b), unknown(c))));
  RandomChoices rng(7);
  int hits = 0;
  const int runs = 10000;
  for (int i = 0; i < runs; ++i) {
    auto out = narrow(*e, k, rng);
    ASSERT_TRUE(out.has_value());
    // The value may be u3 itself, which the top level then unifies.
    ConstraintSet after = out->kappa;
    after.unify(out->value, val::true_value());
    if (after.sat()) ++hits;
  }
  EXPECT_NEAR(hits / double(runs), 0.25, 0.02);
}

TEST(Choose, BothSatisfiable) {
  ConstraintSet k;
  EnumeratingChoices choices;
  Trace t;
  EXPECT_EQ(choose(1, k, 1, k, choices, t), Side::kLeft);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.choices()[0].index, 0u);
  EXPECT_EQ(t.choices()[0].arity, 2u);
  EXPECT_EQ(t.probability(), mpq_class(1, 2));
}

TEST(Choose, OneSatisfiable) {
  ConstraintSet k, dead;
  dead.set_failed();
  RandomChoices rng(3);
  Trace t;
  EXPECT_EQ(choose(5, k, 1, dead, rng, t), Side::kLeft);
  EXPECT_TRUE(t.empty());
  EXPECT_EQ(choose(5, dead, 1, k, rng, t), Side::kRight);
  EXPECT_TRUE(t.empty());
  EXPECT_THROW(choose(1, dead, 1, dead, rng, t), ContractViolation);
}

TEST(Choose, FollowsWeights) {
  ConstraintSet k;
  RandomChoices rng(11);
  int right = 0;
  const int runs = 10000;
  for (int i = 0; i < runs; ++i) {
    Trace t;
    if (choose(1, k, 3, k, rng, t) == Side::kRight) {
      ++right;
      EXPECT_EQ(t.probability(), mpq_class(3, 4));
    }
  }
  EXPECT_NEAR(right / double(runs), 0.75, 0.02);
}

TEST(SampleValue, Unit) {
  ConstraintSet k;
  RandomChoices rng(1);
  Trace t;
  auto out = sample_value(val::unit(), k, rng, t);
  ASSERT_TRUE(out.has_value());
  EXPECT_TRUE(t.empty());
}

TEST(SampleValue, OneUnknown) {
  ConstraintSet k(1, 3);
  const uint32_t u = k.fresh(int_type());
  RandomChoices rng(1);
  Trace t;
  auto out = sample_value(val::unknown(u), k, rng, t);
  ASSERT_TRUE(out.has_value());
  EXPECT_TRUE(out->int_value(u).has_value());
  EXPECT_EQ(t.probability(), mpq_class(1, 3));
}

TEST(SampleValue, PairIsLeftToRight) {
  ConstraintSet k;
  const uint32_t u = k.fresh(bool_type());
  const uint32_t w = k.fresh(bool_type());
  const ValuePtr v = val::pair(val::unknown(u), val::unknown(w));
  EnumeratingChoices choices;
  std::set<std::pair<std::string, std::string>> seen;
  do {
    Trace t;
    auto out = sample_value(v, k, choices, t);
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(t.probability(), mpq_class(1, 4));
    ASSERT_EQ(t.size(), 2u);
    seen.insert({value_to_string(*out->index(u)),
                 value_to_string(*out->index(w))});
  } while (choices.advance());
  EXPECT_EQ(seen.size(), 4u);
}

TEST(NatOf, Examples) {
  ConstraintSet k(0, 9);
  EXPECT_EQ(nat_of(k, val::nat(2)), 2u);
  const uint32_t u = k.fresh(int_type());
  k.unify(val::unknown(u), val::integer(7));
  EXPECT_EQ(nat_of(k, val::unknown(u)), 7u);
  EXPECT_THROW(nat_of(k, val::pair(val::unit(), val::unit())),
               ContractViolation);
  const uint32_t open = k.fresh(int_type());
  EXPECT_THROW(nat_of(k, val::unknown(open)), ContractViolation);
}

TEST(Match, UnknownAgainstTrue) {
  ConstraintSet k;
  const uint32_t u = k.fresh(bool_type());
  RandomChoices rng(1);
  MatchOutcome m = match_eval(*typed(k, unknown(u)), val::true_value(), k, rng);
  ASSERT_TRUE(m.result.has_value());
  EXPECT_TRUE(values_equal(*m.result->index(u), *val::true_value()));
  EXPECT_EQ(m.trace.probability(), 1);
}

TEST(Match, SampleAfterConstraintsTable) {
  ConstraintSet k(0, 9);
  const uint32_t u = k.fresh(int_type());
  const auto rows = enumerate_match(typed(k, expr_a(u)), k, u);
  ASSERT_EQ(rows.size(), 3u);
  mpq_class total = 0;
  for (uint32_t i = 0; i < 3; ++i) {
    ASSERT_TRUE(rows[i].u.has_value());
    EXPECT_EQ(*rows[i].u, i + 1);
    EXPECT_EQ(rows[i].script,
              (std::vector<std::pair<uint32_t, uint32_t>>{{i, 3}}));
    EXPECT_EQ(rows[i].q, mpq_class(1, 3));
    total += rows[i].q;
  }
  EXPECT_EQ(total, 1);
}

TEST(Match, SampleBeforeConstraintsTable) {
  ConstraintSet k(0, 9);
  const uint32_t u = k.fresh(int_type());
  const auto rows = enumerate_match(typed(k, expr_b(u)), k, u);
  ASSERT_EQ(rows.size(), 9u);
  mpq_class failed = 0;
  for (uint32_t i = 0; i < 9; ++i) {
    EXPECT_EQ(rows[i].script,
              (std::vector<std::pair<uint32_t, uint32_t>>{{i, 9}}));
    EXPECT_EQ(rows[i].q, mpq_class(1, 9));
    if (i < 3) {
      ASSERT_TRUE(rows[i].u.has_value());
      EXPECT_EQ(*rows[i].u, i + 1);
    } else {
      EXPECT_FALSE(rows[i].u.has_value());
      failed += rows[i].q;
    }
  }
  EXPECT_EQ(failed, mpq_class(2, 3));
}

TEST(Match, ConjunctionNeverFails) {
  ConstraintSet k;
  const uint32_t a = k.fresh(bool_type());
  const uint32_t b = k.fresh(bool_type());
  const uint32_t c = k.fresh(bool_type());
  const ExprPtr e =
      typed(k, and_(unknown(a), and_(unknown(b), unknown(c))));
  RandomChoices rng(5);
  for (int i = 0; i < 1000; ++i) {
    MatchOutcome m = match_eval(*e, val::true_value(), k, rng);
    ASSERT_TRUE(m.result.has_value());
    for (uint32_t x : {a, b, c}) {
      EXPECT_TRUE(values_equal(*m.result->index(x), *val::true_value()));
    }
  }
}

TEST(Match, FalseConjunctionStaysSound) {
  // Both branches succeed; ranges cannot hold the union, so a branch is
  // picked and no valuation makes the conjunction true.
  ConstraintSet k;
  const uint32_t a = k.fresh(bool_type());
  const uint32_t b = k.fresh(bool_type());
  const ExprPtr e = typed(k, and_(unknown(a), unknown(b)));
  EnumeratingChoices choices;
  std::set<std::string> seen;
  do {
    MatchOutcome m = match_eval(*e, val::false_value(), k, choices);
    ASSERT_TRUE(m.result.has_value());
    for (const auto& s : denote_restricted(*m.result, {a, b})) {
      const bool ta = values_equal(*s.at(a), *val::true_value());
      const bool tb = values_equal(*s.at(b), *val::true_value());
      EXPECT_FALSE(ta && tb);
      seen.insert(valuation_to_string(s));
    }
  } while (choices.advance());
  EXPECT_EQ(seen.size(), 3u);
}

TEST(Match, IntegerUnionIsKept) {
  // Matching A against False unions {0} and {4..9} without a choice.
  ConstraintSet k(0, 9);
  const uint32_t u = k.fresh(int_type());
  const ExprPtr e =
      typed(k, and_(lt(int_lit(0), unknown(u)), lt(unknown(u), int_lit(4))));
  RandomChoices rng(2);
  MatchOutcome m = match_eval(*e, val::false_value(), k, rng);
  ASSERT_TRUE(m.result.has_value());
  EXPECT_TRUE(m.trace.empty());
  EXPECT_EQ(m.result->int_domain(u),
            IntervalSet::singleton(0).unite(IntervalSet::range(4, 9)));
}

TEST(Combine, Clauses) {
  ConstraintSet base(0, 9);
  const uint32_t u = base.fresh(int_type());
  EXPECT_FALSE(combine(base, std::nullopt, std::nullopt).has_value());
  ConstraintSet a = base;
  a.unify(val::unknown(u), val::integer(1));
  auto one = combine(base, a, std::nullopt);
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(*one->int_value(u), 1);
  ConstraintSet b = base;
  b.fresh(bool_type());  // a local unknown on one side only
  b.unify(val::unknown(u), val::integer(2));
  a.fresh(int_type());
  auto both = combine(base, a, b);
  ASSERT_TRUE(both.has_value());
  EXPECT_EQ(both->int_domain(u),
            IntervalSet::singleton(1).unite(IntervalSet::singleton(2)));
  EXPECT_EQ(both->unknowns().size(), 3u);
}

TEST(Fuel, DivergenceIsATimeout) {
  CoreProgram p;
  GlobalDef* loop = p.add("loop");
  loop->type = arrow_type(unit_type(), bool_type());
  loop->body = lam("loop", "x", loop->type, app(global(loop), var(0)));
  p.finalize();
  ConstraintSet k;
  EvalOptions options;
  options.fuel = 10000;
  RandomChoices rng(1);
  const ExprPtr e = typed(k, app(global(loop), unit()));
  EXPECT_THROW(match_eval(*e, val::true_value(), k, rng, options),
               FuelExhausted);
  EXPECT_THROW(narrow(*e, k, rng, options), FuelExhausted);
}

TEST(Replay, ReproducesOutcomeAndProbability) {
  ConstraintSet k(0, 9);
  const uint32_t u = k.fresh(int_type());
  const ExprPtr e = typed(k, expr_b(u));
  RandomChoices rng(99);
  for (int i = 0; i < 50; ++i) {
    MatchOutcome m = match_eval(*e, val::true_value(), k, rng);
    ReplayChoices replay(m.trace.script());
    MatchOutcome again = match_eval(*e, val::true_value(), k, replay);
    EXPECT_TRUE(replay.finished());
    EXPECT_EQ(again.result.has_value(), m.result.has_value());
    if (m.result) EXPECT_EQ(again.result->int_value(u), m.result->int_value(u));
    EXPECT_EQ(again.trace.probability(), m.trace.probability());
  }
}

}  // namespace
}  // namespace luck
