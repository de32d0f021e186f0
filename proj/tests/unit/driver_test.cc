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

#include "luck/driver/driver.h"
#include "luck/support/random.h"
#include "support/corpus.h"
#include "support/properties.h"

namespace luck::testing {
namespace {

using surface::QueryBounds;

QueryBounds ints(int64_t lo, int64_t hi, std::optional<uint32_t> depth = {}) {
  QueryBounds b;
  b.ints = std::make_pair(lo, hi);
  b.depth = depth;
  return b;
}

mpq_class probability(const EnumeratingChoices& c) {
  mpq_class q(1);
  for (const auto& [n, d] : c.taken_probabilities()) {
    mpq_class f(static_cast<unsigned long>(n), static_cast<unsigned long>(d));
    f.canonicalize();
    q *= f;
  }
  return q;
}

TEST(SampleFinal, OrderedPairIsPerVariable) {
  ConstraintSet k(1, 3);
  const uint32_t u = k.fresh(int_type());
  const uint32_t v = k.fresh(int_type());
  k.add_comparison(IntTerm::var(u), CmpOp::kLt, IntTerm::var(v));
  std::map<std::pair<int64_t, int64_t>, mpq_class> seen;
  EnumeratingChoices c;
  do {
    ConstraintSet s = k;
    Trace t;
    auto val = sample_final(s, {u, v}, c, t);
    ASSERT_TRUE(val);
    EXPECT_EQ(t.probability(), probability(c));
    seen[{val->at(u)->number, val->at(v)->number}] += t.probability();
  } while (c.advance());
  const std::map<std::pair<int64_t, int64_t>, mpq_class> want = {
      {{1, 2}, mpq_class(1, 4)},
      {{1, 3}, mpq_class(1, 4)},
      {{2, 3}, mpq_class(1, 2)}};
  EXPECT_EQ(seen, want);
}

TEST(SampleFinal, StructuredUnknownIsPinnedLeafByLeaf) {
  ConstraintSet k(0, 1);
  const uint32_t p = k.fresh(prod_type(bool_type(), int_type()));
  std::set<std::string> seen;
  EnumeratingChoices c;
  do {
    ConstraintSet s = k;
    Trace t;
    auto val = sample_final(s, {p}, c, t);
    ASSERT_TRUE(val);
    EXPECT_EQ(t.probability(), mpq_class(1, 4));
    seen.insert(value_to_string(*val->at(p)));
  } while (c.advance());
  EXPECT_EQ(seen.size(), 4u);
}

TEST(SampleFinal, EmptyStoreHasNoResult) {
  ConstraintSet k(0, 3);
  const uint32_t u = k.fresh(int_type());
  k.restrict_int(u, IntervalSet::range(7, 9));
  RandomChoices rng(1);
  Trace t;
  EXPECT_FALSE(sample_final(k, {u}, rng, t));
}

TEST(Driver, BstOutputsAreBsts) {
  auto q = query("bst", "bst 10 0 9 t = True");
  Budget b;
  b.recheck = false;
  for (const auto& r : run_batch(q, 7, 400, b)) {
    ASSERT_TRUE(r.success) << r.failure;
    const std::string text = q.render_value(0, r.valuation);
    auto t = parse_tree(text);
    ASSERT_NE(t, nullptr) << text;
    EXPECT_TRUE(is_bst(*t, 0, 9)) << text;
  }
}

TEST(Driver, SameSeedSameResult) {
  auto q = query("isRBT", "isRBT 2 0 7 Red t = True");
  for (uint64_t seed : {0ull, 1ull, 123456789ull}) {
    const GenReport a = run_query(q, seed);
    const GenReport b = run_query(q, seed);
    ASSERT_TRUE(a.success);
    EXPECT_EQ(q.render(a.valuation), q.render(b.valuation));
    EXPECT_EQ(trace_line(a), trace_line(b));
    EXPECT_EQ(a.attempts, b.attempts);
  }
}

TEST(Driver, BatchDoesNotDependOnJobs) {
  auto q = query("bst", "bst 6 0 9 t = True");
  const auto one = run_batch(q, 99, 64, {}, 1);
  const auto four = run_batch(q, 99, 64, {}, 4);
  ASSERT_EQ(one.size(), four.size());
  for (size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(q.render(one[i].valuation), q.render(four[i].valuation)) << i;
    EXPECT_EQ(trace_line(one[i]), trace_line(four[i])) << i;
  }
}

TEST(Driver, ReplayReproducesEveryReport) {
  for (const auto& [program, text] :
       std::vector<std::pair<std::string, std::string>>{
           {"bst", "bst 5 0 9 t = True"},
           {"isRedex", "isRedex t = True"},
           {"ex35", "B u = True"}}) {
    auto q = query(program, text, ints(0, 9, 3));
    for (const auto& r : run_batch(q, 5, 100)) {
      ASSERT_TRUE(r.success);
      const TraceLine line = parse_trace_line(trace_line(r));
      EXPECT_EQ(line.seed, r.attempt_seed);
      auto again = replay(q, line);
      ASSERT_TRUE(again && again->valuation) << trace_line(r);
      EXPECT_EQ(q.render(*again->valuation), q.render(r.valuation));
      EXPECT_EQ(again->trace.probability(), line.q);
    }
  }
}

TEST(Driver, ReplayRejectsForeignChoices) {
  auto q = query("ex35", "A u = True", ints(0, 9));
  TraceLine line;
  line.choices = {{5, 9}, {0, 2}, {0, 2}, {0, 2}};
  line.q = 1;
  auto r = replay(q, line);
  EXPECT_TRUE(!r || !r->valuation);
}

TEST(Driver, LocalBacktrackingNeverHurts) {
  auto q = query("lists", "member x l = True", ints(0, 3, 4));
  Budget on, off;
  off.local_backtracking = false;
  int with = 0, without = 0;
  const int runs = 3000;
  for (int i = 0; i < runs; ++i) {
    RandomChoices a(i), b(i);
    with += run_attempt(q, a, on).valuation.has_value();
    without += run_attempt(q, b, off).valuation.has_value();
  }
  EXPECT_GE(with, without - runs / 50);
  EXPECT_GT(with, 0);
}

TEST(Driver, SmallQueriesReachEverySolution) {
  for (const auto& [program, text, bounds] :
       std::vector<std::tuple<std::string, std::string, QueryBounds>>{
           {"lists", "sorted l = True", ints(0, 2, 3)},
           {"conj", "conj3 a b c = False", {}},
           {"bst", "bst 3 0 4 t = True", ints(0, 4, 2)}}) {
    auto q = query(program, text, bounds);
    std::set<Valuation, ValuationLess> want;
    for (const auto& s : solutions(q)) want.insert(s);
    std::set<Valuation, ValuationLess> got;
    for (const auto& r : run_batch(q, 11, 4000)) {
      ASSERT_TRUE(r.success);
      got.insert(r.valuation);
      EXPECT_TRUE(want.count(r.valuation)) << q.render(r.valuation);
    }
    EXPECT_EQ(got.size(), want.size()) << text;
  }
}

TEST(Driver, UnsatisfiableQueryIsExhausted) {
  auto q = query("ex35", "A u = True", ints(5, 9));
  Budget b;
  b.max_attempts = 25;
  const GenReport r = run_query(q, 3, b);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.failure, "exhausted");
  EXPECT_EQ(r.attempts, 25u);
}

TEST(Driver, DivergenceIsReportedAsFuel) {
  auto p = surface::load_program(
      "sig loop :: Bool -> Bool\nfun loop x = loop x\n");
  auto q = surface::compile_query(p, "loop u = True");
  Budget b;
  b.fuel = 5000;
  const GenReport r = run_query(q, 1, b);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.failure, "fuel exhausted");
}

}  // namespace
}  // namespace luck::testing
