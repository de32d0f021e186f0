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

#include "support/stores.h"

#include <algorithm>
#include <set>

#include "luck/constraints/denote.h"
#include "luck/core/expr.h"
#include "luck/support/error.h"

namespace luck::testing {
namespace {

constexpr int64_t kLo = 0;
constexpr int64_t kHi = 3;
constexpr uint32_t kNatDepth = 2;

Type pick_type(SplitMix64& rng) {
  switch (rng.below(5)) {
    case 0:
      return bool_type();
    case 1:
      return int_type();
    case 2:
      return prod_type(bool_type(), int_type());
    case 3:
      return sum_type(unit_type(), int_type());
    default:
      return nat_type();
  }
}

uint32_t fresh_bounded(ConstraintSet& k, Type t) {
  const uint32_t u = k.fresh(t);
  if (t->recursive) k.constrain_depth(u, kNatDepth);
  return u;
}

void unknowns_of(const Value& v, std::set<uint32_t>& out) {
  if (v.kind == ValueKind::kUnknown) out.insert(v.unknown);
  if (v.a) unknowns_of(*v.a, out);
  if (v.b) unknowns_of(*v.b, out);
}

std::vector<uint32_t> with(const std::vector<uint32_t>& us,
                           const std::set<uint32_t>& more) {
  std::set<uint32_t> all(us.begin(), us.end());
  all.insert(more.begin(), more.end());
  return {all.begin(), all.end()};
}

Valuation restrict(const Valuation& s, const std::vector<uint32_t>& us) {
  Valuation out;
  for (uint32_t u : us) out[u] = s.at(u);
  return out;
}

std::set<Valuation, ValuationLess> as_set(const std::vector<Valuation>& v) {
  return {v.begin(), v.end()};
}

bool same(const std::set<Valuation, ValuationLess>& a,
          const std::set<Valuation, ValuationLess>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Valuation& x, const Valuation& y) {
                      return compare_valuations(x, y) == 0;
                    });
}

std::vector<uint32_t> int_unknowns(const ConstraintSet& k,
                                   const std::vector<uint32_t>& us) {
  std::vector<uint32_t> out;
  for (uint32_t u : us) {
    if (k.type_of(u) == int_type()) out.push_back(u);
  }
  return out;
}

CmpOp pick_op(SplitMix64& rng) {
  return static_cast<CmpOp>(rng.below(6));
}

// One refinement step that creates no unknowns visible outside.
void refine(SplitMix64& rng, ConstraintSet& k, const std::vector<uint32_t>& us) {
  const auto ints = int_unknowns(k, us);
  switch (rng.below(4)) {
    case 0: {
      const uint32_t u = us[rng.below(us.size())];
      k.unify(val::unknown(u), random_pattern(rng, k, k.type_of(u), us));
      break;
    }
    case 1:
      if (ints.size() >= 2) {
        const uint32_t a = ints[rng.below(ints.size())];
        const uint32_t b = ints[rng.below(ints.size())];
        if (a != b) {
          k.add_comparison(IntTerm::var(a), pick_op(rng), IntTerm::var(b),
                           static_cast<int64_t>(rng.below(3)) - 1);
        }
      }
      break;
    case 2:
      if (!ints.empty()) {
        const uint32_t a = ints[rng.below(ints.size())];
        k.add_comparison(IntTerm::var(a), pick_op(rng),
                         IntTerm::lit(static_cast<int64_t>(rng.below(4))));
      }
      break;
    default:
      if (!ints.empty()) {
        const uint32_t a = ints[rng.below(ints.size())];
        const int64_t lo = static_cast<int64_t>(rng.below(4));
        k.restrict_int(a, IntervalSet::range(lo, lo + rng.below(3)));
      }
      break;
  }
}

void fail(OracleReport& r, const std::string& what, const ConstraintSet& k) {
  if (r.failures.size() < 20) {
    r.failures.push_back(what + "\n" + k.debug_string());
  }
}

}  // namespace

ValuePtr random_pattern(SplitMix64& rng, ConstraintSet& k, Type t,
                        const std::vector<uint32_t>& us, int depth) {
  std::vector<uint32_t> same;
  for (uint32_t u : us) {
    if (k.type_of(u) == t) same.push_back(u);
  }
  const uint64_t roll = rng.below(10);
  if (roll < 3 && !same.empty()) {
    return val::unknown(same[rng.below(same.size())]);
  }
  if (roll < 5 || depth <= 0) return val::unknown(fresh_bounded(k, t));
  switch (t->kind) {
    case TypeKind::kUnit:
      return val::unit();
    case TypeKind::kInt:
      return val::integer(static_cast<int64_t>(rng.below(4)));
    case TypeKind::kSum:
      if (rng.below(2) == 0) {
        return val::inl(t, random_pattern(rng, k, t->left, us, depth - 1));
      }
      return val::inr(t, random_pattern(rng, k, t->right, us, depth - 1));
    case TypeKind::kProd: {
      ValuePtr a = random_pattern(rng, k, t->left, us, depth - 1);
      return val::pair(a, random_pattern(rng, k, t->right, us, depth - 1));
    }
    case TypeKind::kMu:
      return val::fold(t, random_pattern(rng, k, unfold_type(t), us, depth - 1));
    default:
      throw ContractViolation("no patterns at this type");
  }
}

StoreCase random_store(SplitMix64& rng) {
  StoreCase c{ConstraintSet(kLo, kHi), {}};
  const uint64_t n = 1 + rng.below(3);
  for (uint64_t i = 0; i < n; ++i) {
    c.us.push_back(fresh_bounded(c.k, pick_type(rng)));
  }
  const uint64_t steps = rng.below(4);
  for (uint64_t i = 0; i < steps && c.k.sat(); ++i) refine(rng, c.k, c.us);
  return c;
}

void check_store(const StoreCase& c, SplitMix64& rng, OracleReport& r,
                 uint64_t max_denotation) {
  const ConstraintSet& k = c.k;
  std::vector<Valuation> base;
  try {
    base = denote_restricted(k, c.us, 4096);
  } catch (const LuckError&) {
    ++r.skipped;
    return;
  }
  if (base.size() > max_denotation) {
    ++r.skipped;
    return;
  }
  ++r.stores;
  const auto base_set = as_set(base);

  // SAT is never false on a store with valuations.
  ++r.checks;
  if (!base.empty() && !k.sat()) fail(r, "sat false on a nonempty store", k);
  if (!k.sat()) return;

  // Fresh leaves the old unknowns alone.
  {
    ConstraintSet f = k;
    f.fresh(pick_type(rng));
    ++r.checks;
    if (!same(as_set(denote_restricted(f, c.us)), base_set)) {
      fail(r, "fresh changed the denotation", k);
    }
  }

  // Unify filters exactly.
  {
    const uint32_t u = c.us[rng.below(c.us.size())];
    const Type t = k.type_of(u);
    ConstraintSet kb = k;
    ValuePtr v1 = rng.below(2) ? val::unknown(u)
                               : random_pattern(rng, kb, t, c.us);
    ValuePtr v2 = random_pattern(rng, kb, t, c.us);
    std::set<uint32_t> extra;
    unknowns_of(*v1, extra);
    unknowns_of(*v2, extra);
    const auto vars = with(c.us, extra);
    std::vector<Valuation> before;
    try {
      before = denote_restricted(kb, vars, 20000);
    } catch (const LuckError&) {
      before.clear();
      extra.clear();
    }
    if (!extra.empty() || !before.empty()) {
      std::set<Valuation, ValuationLess> expected;
      for (const auto& s : before) {
        if (values_equal(*substitute_unknowns(v1, s),
                         *substitute_unknowns(v2, s))) {
          expected.insert(s);
        }
      }
      ConstraintSet ku = kb;
      ku.unify(v1, v2);
      ++r.checks;
      if (!same(as_set(denote_restricted(ku, vars, 20000)), expected)) {
        fail(r, "unify " + value_to_string(*v1) + " = " +
                    value_to_string(*v2) + " is not an exact filter",
             kb);
      }
    }
  }

  // Sample partitions the denotation and pins the unknown.
  for (uint32_t u : c.us) {
    const auto parts = k.sample(u);
    std::set<Valuation, ValuationLess> seen;
    size_t total = 0;
    bool pinned = true;
    for (const auto& p : parts) {
      pinned = pinned && p.index(u) != nullptr;
      const auto d = denote_restricted(p, c.us);
      total += d.size();
      seen.insert(d.begin(), d.end());
    }
    ++r.checks;
    if (!pinned) fail(r, "sample left ?u" + std::to_string(u) + " open", k);
    if (!same(seen, base_set) || total != seen.size()) {
      fail(r, "sample of ?u" + std::to_string(u) + " is not a partition", k);
    }
  }

  // Union keeps every valuation of both sides.
  {
    ConstraintSet k1 = k, k2 = k;
    refine(rng, k1, c.us);
    refine(rng, k2, c.us);
    // Unknowns refine creates on one side are renamed apart.
    if (k1.sat() || k2.sat()) {
      bool exact = false;
      ConstraintSet un = ConstraintSet::union_of(
          k1, k2.rename_since(k, std::max(k1.next_unknown(), k2.next_unknown())),
          &exact);
      const auto d = as_set(denote_restricted(un, c.us, 20000));
      ++r.checks;
      std::set<Valuation, ValuationLess> both;
      for (const auto& s : denote_restricted(k1, c.us)) both.insert(s);
      for (const auto& s : denote_restricted(k2, c.us)) both.insert(s);
      bool superset = true;
      for (const auto& s : both) superset = superset && d.count(s);
      if (!superset) fail(r, "union lost valuations", k);
      if (exact) {
        ++r.exact_unions;
        if (!same(d, both)) fail(r, "union claimed exact but is not", k);
      }
    }
  }

  // Union is exact for two integer restrictions of one free unknown.
  for (uint32_t u : int_unknowns(k, c.us)) {
    const Binding* b = k.binding(k.find(u));
    if (b != nullptr && !b->constraints.empty()) continue;
    ConstraintSet k1 = k, k2 = k;
    k1.restrict_int(u, IntervalSet::singleton(static_cast<int64_t>(rng.below(4))));
    k2.restrict_int(u, IntervalSet::singleton(static_cast<int64_t>(rng.below(4))));
    std::set<Valuation, ValuationLess> expected;
    for (const auto& s : denote_restricted(k1, c.us)) expected.insert(s);
    for (const auto& s : denote_restricted(k2, c.us)) expected.insert(s);
    ++r.checks;
    if (!same(as_set(denote_restricted(ConstraintSet::union_of(k1, k2), c.us)),
              expected)) {
      fail(r, "integer union is not exact", k);
    }
    break;
  }

  // Propagation never drops a solution, and keeps exactly the filter.
  {
    const auto ints = int_unknowns(k, c.us);
    if (ints.size() >= 2) {
      const uint32_t a = ints[0], b = ints[1];
      const CmpOp op = pick_op(rng);
      const int64_t off = static_cast<int64_t>(rng.below(3)) - 1;
      ConstraintSet kc = k;
      kc.add_comparison(IntTerm::var(a), op, IntTerm::var(b), off);
      std::set<Valuation, ValuationLess> expected;
      for (const auto& s : base) {
        if (compare_ints(op, s.at(a)->number, s.at(b)->number + off)) {
          expected.insert(s);
        }
      }
      ++r.checks;
      if (!same(as_set(denote_restricted(kc, c.us)), expected)) {
        fail(r, "comparison is not an exact filter", k);
      }
      if (!expected.empty() && !kc.sat()) fail(r, "propagation over-pruned", k);
    }
  }
}

OracleReport run_store_oracles(uint64_t seed, uint64_t stores) {
  SplitMix64 rng(seed);
  OracleReport r;
  while (r.stores < stores) {
    StoreCase c = random_store(rng);
    check_store(c, rng, r);
    if (r.skipped > stores * 20) break;
  }
  return r;
}

}  // namespace luck::testing
