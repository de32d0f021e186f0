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

#include <algorithm>
#include <set>

#include "luck/constraints/constraint_set.h"
#include "luck/constraints/denote.h"
#include "luck/support/error.h"
#include "support/stores.h"

namespace luck {
namespace {

std::set<Valuation, ValuationLess> vals(const std::vector<Valuation>& v) {
  return {v.begin(), v.end()};
}

bool same(const std::set<Valuation, ValuationLess>& a,
          const std::set<Valuation, ValuationLess>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Valuation& x, const Valuation& y) {
                      return compare_valuations(x, y) == 0;
                    });
}

Type bool2() { return prod_type(bool_type(), bool_type()); }

ConstraintSet small(int64_t lo, int64_t hi) { return ConstraintSet(lo, hi); }

std::set<std::pair<int64_t, int64_t>> int_pairs(const ConstraintSet& k,
                                                uint32_t u, uint32_t v) {
  std::set<std::pair<int64_t, int64_t>> out;
  for (const auto& s : denote_restricted(k, {u, v})) {
    out.insert({s.at(u)->number, s.at(v)->number});
  }
  return out;
}

TEST(Fresh, ExtendsTypesOnly) {
  ConstraintSet k = small(0, 3);
  const uint32_t a = k.fresh(bool_type());
  const auto before = denote_restricted(k, {a});
  const uint32_t b = k.fresh(bool_type());
  EXPECT_LT(a, b);
  EXPECT_EQ(denote_restricted(k, {a}).size(), before.size());
  auto [k2, us] = fresh(k, {nat_type(), prod_type(nat_type(), nat_type())});
  ASSERT_EQ(us.size(), 2u);
  EXPECT_EQ(k2.type_of(us[0]), nat_type());
  EXPECT_EQ(k2.type_of(us[1]), prod_type(nat_type(), nat_type()));
  EXPECT_GT(us[0], b);
}

TEST(Fresh, RejectsArrows) {
  ConstraintSet k;
  EXPECT_THROW(k.fresh(arrow_type(unit_type(), unit_type())),
               ContractViolation);
}

TEST(Unify, PinsBoolean) {
  ConstraintSet k;
  const uint32_t u = k.fresh(bool_type());
  k.unify(val::unknown(u), val::true_value());
  ASSERT_TRUE(k.sat());
  ASSERT_NE(k.index(u), nullptr);
  EXPECT_TRUE(values_equal(*k.index(u), *val::true_value()));
  EXPECT_EQ(denote_restricted(k, {u}).size(), 1u);
}

TEST(Unify, UnitIsNeutral) {
  ConstraintSet k = small(0, 2);
  const uint32_t u = k.fresh(int_type());
  const auto before = denote_restricted(k, {u});
  k.unify(val::unit(), val::unit());
  EXPECT_TRUE(k.sat());
  EXPECT_TRUE(same(vals(denote_restricted(k, {u})), vals(before)));
}

TEST(Unify, OutOfDomainLiteralFails) {
  ConstraintSet k = small(0, 9);
  const uint32_t u = k.fresh(int_type());
  k.unify(val::unknown(u), val::integer(12));
  EXPECT_FALSE(k.sat());
}

TEST(Unify, AliasesLargerToSmaller) {
  ConstraintSet k = small(0, 9);
  const uint32_t u = k.fresh(int_type());
  const uint32_t w = k.fresh(int_type());
  k.unify(val::unknown(w), val::unknown(u));
  EXPECT_EQ(k.find(w), u);
  k.unify(val::unknown(u), val::integer(5));
  ASSERT_TRUE(k.int_value(w).has_value());
  EXPECT_EQ(*k.int_value(w), 5);
}

TEST(Sat, FreshAndFailed) {
  ConstraintSet k;
  k.fresh(bool_type());
  EXPECT_TRUE(k.sat());
  k.set_failed();
  EXPECT_FALSE(k.sat());
}

TEST(Sat, CyclicOrderEmptiesDomains) {
  ConstraintSet k = small(1, 3);
  const uint32_t u = k.fresh(int_type());
  const uint32_t v = k.fresh(int_type());
  k.add_comparison(IntTerm::var(u), CmpOp::kLt, IntTerm::var(v));
  ASSERT_TRUE(k.sat());
  k.add_comparison(IntTerm::var(v), CmpOp::kLt, IntTerm::var(u));
  EXPECT_FALSE(k.sat());
}

TEST(Index, OpenBooleanHasNoValue) {
  ConstraintSet k;
  const uint32_t u = k.fresh(bool_type());
  const uint32_t a = k.fresh(bool_type());
  const uint32_t b = k.fresh(bool_type());
  k.unify(val::unknown(a), val::true_value());
  k.unify(val::unknown(b), val::false_value());
  ConstraintSet ka = k, kb = k;
  ka.unify(val::unknown(u), val::true_value());
  kb.unify(val::unknown(u), val::false_value());
  const ConstraintSet both = ConstraintSet::union_of(ka, kb);
  EXPECT_EQ(both.index(u), nullptr);
  EXPECT_EQ(denote_restricted(both, {u}).size(), 2u);
}

TEST(Index, RejectsMissingUnknown) {
  ConstraintSet k;
  EXPECT_THROW(k.index(7), ContractViolation);
}

TEST(Sample, BooleanInStructuralOrder) {
  ConstraintSet k;
  const uint32_t u = k.fresh(bool_type());
  const auto parts = k.sample(u);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(values_equal(*parts[0].index(u), *val::true_value()));
  EXPECT_TRUE(values_equal(*parts[1].index(u), *val::false_value()));
}

TEST(Sample, IntegerDomain) {
  ConstraintSet k = small(1, 3);
  const uint32_t u = k.fresh(int_type());
  const auto parts = k.sample(u);
  ASSERT_EQ(parts.size(), 3u);
  for (int64_t i = 0; i < 3; ++i) EXPECT_EQ(*parts[i].int_value(u), i + 1);
}

TEST(Sample, PairOfBooleans) {
  ConstraintSet k;
  const uint32_t u = k.fresh(bool2());
  EXPECT_EQ(k.sample(u).size(), 4u);
  EXPECT_EQ(denote_restricted(k, {u}).size(), 4u);
}

TEST(Sample, DropsUnsatisfiableBranches) {
  ConstraintSet k = small(1, 3);
  const uint32_t u = k.fresh(int_type());
  const uint32_t v = k.fresh(int_type());
  k.add_comparison(IntTerm::var(u), CmpOp::kLt, IntTerm::var(v));
  const auto parts = k.sample(u);
  ASSERT_EQ(parts.size(), 2u);  // u = 3 has no partner
  EXPECT_EQ(*parts[0].int_value(u), 1);
  EXPECT_EQ(*parts[1].int_value(u), 2);
}

TEST(Union, IntegerSingletons) {
  ConstraintSet k = small(0, 9);
  const uint32_t u = k.fresh(int_type());
  ConstraintSet a = k, b = k;
  a.unify(val::unknown(u), val::integer(1));
  b.unify(val::unknown(u), val::integer(3));
  const ConstraintSet un = ConstraintSet::union_of(a, b);
  EXPECT_EQ(un.int_domain(u).size(), 2u);
  EXPECT_TRUE(un.int_domain(u).contains(1));
  EXPECT_TRUE(un.int_domain(u).contains(3));
}

TEST(Union, PairsOverApproximate) {
  ConstraintSet k = small(0, 1);
  const uint32_t u = k.fresh(int_type());
  const uint32_t v = k.fresh(int_type());
  ConstraintSet a = k, b = k;
  a.unify(val::pair(val::unknown(u), val::unknown(v)),
          val::pair(val::integer(0), val::integer(1)));
  b.unify(val::pair(val::unknown(u), val::unknown(v)),
          val::pair(val::integer(1), val::integer(0)));
  const ConstraintSet un = ConstraintSet::union_of(a, b);
  EXPECT_EQ(int_pairs(un, u, v).size(), 4u);
}

TEST(Union, RejectsTypeDisagreement) {
  ConstraintSet a, b;
  a.fresh(bool_type());
  b.fresh(int_type());
  EXPECT_THROW(ConstraintSet::union_of(a, b), ContractViolation);
}

TEST(Rename, EmptyIsIdentity) {
  ConstraintSet k = small(0, 9);
  const uint32_t u = k.fresh(int_type());
  k.unify(val::unknown(u), val::integer(5));
  const ConstraintSet r = k.rename({});
  EXPECT_EQ(*r.int_value(u), 5);
}

TEST(Rename, MovesBindingsAndAliases) {
  ConstraintSet k = small(0, 3);
  const uint32_t u = k.fresh(int_type());
  const uint32_t w = k.fresh(int_type());
  k.unify(val::unknown(u), val::unknown(w));
  k.restrict_int(u, IntervalSet::range(1, 2));
  const ConstraintSet r = k.rename({u, w});
  EXPECT_FALSE(r.has_unknown(u));
  EXPECT_FALSE(r.has_unknown(w));
  const auto us = r.unknowns();
  ASSERT_EQ(us.size(), 2u);
  const auto pairs = int_pairs(r, us[0], us[1]);
  EXPECT_EQ(pairs, (std::set<std::pair<int64_t, int64_t>>{{1, 1}, {2, 2}}));
}

TEST(Propagate, LiteralBounds) {
  ConstraintSet k = small(0, 9);
  const uint32_t u = k.fresh(int_type());
  k.add_comparison(IntTerm::lit(0), CmpOp::kLt, IntTerm::var(u));
  EXPECT_EQ(k.int_domain(u), IntervalSet::range(1, 9));
  k.add_comparison(IntTerm::var(u), CmpOp::kLt, IntTerm::lit(4));
  EXPECT_EQ(k.int_domain(u), IntervalSet::range(1, 3));
}

TEST(Propagate, PinningPropagates) {
  ConstraintSet k = small(1, 3);
  const uint32_t u = k.fresh(int_type());
  const uint32_t v = k.fresh(int_type());
  k.add_comparison(IntTerm::var(u), CmpOp::kLt, IntTerm::var(v));
  k.unify(val::unknown(v), val::integer(2));
  EXPECT_EQ(k.int_domain(u), IntervalSet::singleton(1));
}

TEST(Denote, Examples) {
  ConstraintSet k = small(1, 3);
  const uint32_t b = k.fresh(bool_type());
  EXPECT_EQ(denote_restricted(k, {b}).size(), 2u);
  const uint32_t u = k.fresh(int_type());
  EXPECT_EQ(denote_restricted(k, {u}).size(), 3u);
  const uint32_t v = k.fresh(int_type());
  k.add_comparison(IntTerm::var(u), CmpOp::kLt, IntTerm::var(v));
  EXPECT_EQ(int_pairs(k, u, v),
            (std::set<std::pair<int64_t, int64_t>>{{1, 2}, {1, 3}, {2, 3}}));
}

TEST(Denote, CapIsEnforced) {
  ConstraintSet k = small(0, 99);
  const uint32_t u = k.fresh(int_type());
  const uint32_t v = k.fresh(int_type());
  EXPECT_THROW(denote_restricted(k, {u, v}, 1000), LuckError);
}

TEST(Denote, NaturalsUnderDepth) {
  ConstraintSet k;
  const uint32_t n = k.fresh(nat_type());
  k.constrain_depth(n, 3);
  // fold counts 1..3 are 0, 1, 2
  EXPECT_EQ(denote_restricted(k, {n}).size(), 3u);
}

TEST(StoreOracles, RandomStores) {
  const auto r = testing::run_store_oracles(0x5eed, 400);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
  EXPECT_GE(r.stores, 400u);
  EXPECT_GT(r.checks, r.stores * 3);
}

}  // namespace
}  // namespace luck
