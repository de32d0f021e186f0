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

#include <set>

#include "luck/constraints/interval_set.h"
#include "luck/eval/trace.h"
#include "luck/support/error.h"
#include "luck/support/random.h"

namespace luck {
namespace {

TEST(SplitMix, SameSeedSameStream) {
  SplitMix64 a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(SplitMix, BelowIsRoughlyUniform) {
  SplitMix64 r(7);
  int counts[6] = {};
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[r.below(6)];
  for (int c : counts) EXPECT_NEAR(c / double(n), 1.0 / 6, 0.01);
  EXPECT_THROW(r.below(0), ContractViolation);
}

TEST(RandomChoices, WeightedPickFollowsWeights) {
  RandomChoices rc(1);
  const uint64_t w[2] = {1, 3};
  int right = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) right += rc.pick(w, 2) == 1;
  EXPECT_NEAR(right / double(n), 0.75, 0.02);
}

TEST(RandomChoices, ZeroWeightNeverPicked) {
  RandomChoices rc(3);
  const uint64_t w[3] = {0, 5, 0};
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(rc.pick(w, 3), 1u);
}

TEST(ReplayChoices, FollowsScriptAndChecksArity) {
  ReplayChoices r({{1, 2}, {2, 3}});
  const uint64_t w[2] = {1, 1};
  EXPECT_EQ(r.pick(w, 2), 1u);
  EXPECT_FALSE(r.finished());
  EXPECT_EQ(r.pick_uniform(3), 2u);
  EXPECT_TRUE(r.finished());
  EXPECT_THROW(r.pick_uniform(3), ContractViolation);
  ReplayChoices bad({{0, 4}});
  EXPECT_THROW(bad.pick_uniform(3), ContractViolation);
}

TEST(EnumeratingChoices, VisitsEverySequenceOnce) {
  EnumeratingChoices e;
  std::set<std::vector<std::pair<uint32_t, uint32_t>>> seen;
  const uint64_t w[3] = {1, 0, 2};
  do {
    const uint32_t a = e.pick_uniform(2);
    if (a == 1) e.pick(w, 3);
    seen.insert(e.taken());
  } while (e.advance());
  // a=0 alone, then a=1 with the two positive-weight picks.
  EXPECT_EQ(seen.size(), 3u);
  EXPECT_TRUE(seen.count({{1, 2}, {2, 3}}));
  EXPECT_FALSE(seen.count({{1, 2}, {1, 3}}));
}

TEST(IntervalSet, NormalizesAndCounts) {
  IntervalSet s = IntervalSet::range(0, 3).unite(IntervalSet::range(4, 9));
  EXPECT_EQ(s.parts().size(), 1u);
  EXPECT_EQ(s.size(), 10u);
  s = s.remove(5);
  EXPECT_EQ(s.parts().size(), 2u);
  EXPECT_FALSE(s.contains(5));
  EXPECT_EQ(s.nth(5), 6);
  EXPECT_EQ(s.at_least(1).at_most(3), IntervalSet::range(1, 3));
  EXPECT_TRUE(s.intersect(IntervalSet::singleton(5)).empty());
  EXPECT_EQ(IntervalSet::range(1, 2).shift(3), IntervalSet::range(4, 5));
  EXPECT_EQ(IntervalSet::singleton(4).singleton_value(), 4);
}

TEST(Trace, ProbabilityIsProductOfChoices) {
  Trace t;
  EXPECT_EQ(t.probability(), 1);
  t.add(Choice{0, 3, 1, 3});
  t.add(Choice{1, 2, 5, 6});
  EXPECT_EQ(t.probability(), mpq_class(5, 18));
  EXPECT_EQ(t.choices_string(), "[(0,3),(1,2)]");
}

TEST(Trace, LineRoundTrip) {
  Trace t;
  t.add(Choice{2, 9, 1, 9});
  const std::string line = format_trace_line(17, t);
  EXPECT_EQ(line, "seed=17 choices=[(2,9)] q=1/9");
  TraceLine parsed = parse_trace_line(line);
  EXPECT_EQ(parsed.seed, 17u);
  ASSERT_EQ(parsed.choices.size(), 1u);
  EXPECT_EQ(parsed.choices[0], std::make_pair(2u, 9u));
  EXPECT_EQ(parsed.q, mpq_class(1, 9));
  EXPECT_EQ(parse_trace_line("seed=1 choices=[] q=1/1").choices.size(), 0u);
  EXPECT_THROW(parse_trace_line("seed=x choices=[] q=1/1"), LuckError);
  EXPECT_THROW(parse_trace_line("seed=1 choices=[(1,2] q=1/2"), LuckError);
}

}  // namespace
}  // namespace luck
