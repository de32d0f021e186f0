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

#include "support/properties.h"

#include <set>

#include "luck/constraints/denote.h"
#include "luck/driver/driver.h"
#include "luck/eval/evaluator.h"
#include "luck/eval/predicate.h"
#include "luck/support/error.h"
#include "support/corpus.h"

namespace luck::testing {
namespace {

using ValuationSet = std::set<Valuation, ValuationLess>;

void unknowns_of(const Value& v, std::set<uint32_t>& out) {
  if (v.kind == ValueKind::kUnknown) out.insert(v.unknown);
  if (v.a) unknowns_of(*v.a, out);
  if (v.b) unknowns_of(*v.b, out);
}

Valuation restrict(const Valuation& s, const std::vector<uint32_t>& us) {
  Valuation out;
  for (uint32_t u : us) out[u] = s.at(u);
  return out;
}

std::string show(const surface::CompiledQuery& q, const Valuation& s) {
  return q.text + " at " + q.render(restrict(s, q.ids()));
}

}  // namespace

void PropertyReport::fail(std::string what) {
  if (failures.size() < 20) failures.push_back(std::move(what));
}

void check_decreasing_and_sound(const surface::CompiledQuery& q, bool matching,
                                uint64_t seed, uint64_t runs,
                                PropertyReport& r, uint64_t max_denotation) {
  const auto ids = q.ids();
  const auto before = denote_restricted(q.store, ids);
  if (before.size() > max_denotation) {
    r.fail(q.text + ": initial denotation too large for the oracle");
    return;
  }
  const ValuationSet before_set(before.begin(), before.end());
  SplitMix64 seeds(seed);
  for (uint64_t i = 0; i < runs; ++i) {
    RandomChoices choices(seeds.next());
    ++r.runs;
    ConstraintSet after;
    ValuePtr value = q.target_value();
    try {
      if (matching) {
        MatchOutcome m = match_eval(*q.expr, value, q.store, choices);
        if (!m.result) {
          ++r.empty;
          continue;
        }
        after = *m.result;
      } else {
        auto n = narrow(*q.expr, q.store, choices);
        if (!n) {
          ++r.empty;
          continue;
        }
        after = n->kappa;
        value = n->value;
      }
    } catch (const FuelExhausted&) {
      ++r.timeouts;
      continue;
    }
    std::set<uint32_t> vars(ids.begin(), ids.end());
    unknowns_of(*value, vars);
    std::vector<Valuation> kept;
    try {
      kept = denote_restricted(after, {vars.begin(), vars.end()}, 20000);
    } catch (const LuckError& e) {
      r.fail(q.text + ": final store not enumerable: " + e.what());
      continue;
    }
    for (const auto& s : kept) {
      ++r.checks;
      if (!before_set.count(restrict(s, ids))) {
        r.fail(q.text + ": store grew with " + show(q, s));
      }
      ValuePtr got = pred_eval(*substitute_unknowns(q.expr, s));
      ValuePtr want = substitute_unknowns(value, s);
      if (!got || !values_equal(*got, *want)) {
        r.fail(q.text + ": unsound " + (matching ? "match" : "narrow") +
               " at " + show(q, s) + ", expected " + value_to_string(*want));
      }
    }
  }
}

std::vector<Valuation> solutions(const surface::CompiledQuery& q) {
  std::vector<Valuation> out;
  const ValuePtr target = q.target_value();
  for (const auto& s : denote_restricted(q.store, q.ids())) {
    ValuePtr v = pred_eval(*substitute_unknowns(q.expr, s));
    if (v && values_equal(*v, *target)) out.push_back(s);
  }
  return out;
}

void check_completeness(const surface::CompiledQuery& q, PropertyReport& r,
                        uint64_t max_denotation) {
  if (denote_restricted(q.store, q.ids()).size() > max_denotation) {
    r.fail(q.text + ": initial denotation too large for the oracle");
    return;
  }
  const auto brute = solutions(q);
  const ValuationSet want(brute.begin(), brute.end());
  Budget budget;
  budget.recheck = false;
  ValuationSet got;
  for (const auto& o : explore(q, budget)) {
    ++r.runs;
    if (!o.valuation) {
      ++r.empty;
      continue;
    }
    got.insert(*o.valuation);
  }
  ++r.checks;
  for (const auto& s : want) {
    if (!got.count(s)) r.fail(q.text + ": never generated " + q.render(s));
  }
  for (const auto& s : got) {
    if (!want.count(s)) r.fail(q.text + ": generated non-solution " + q.render(s));
  }
}

std::vector<CorpusQuery> property_queries() {
  using B = surface::QueryBounds;
  auto ints = [](int64_t lo, int64_t hi, std::optional<uint32_t> depth) {
    B b;
    b.ints = std::make_pair(lo, hi);
    b.depth = depth;
    return b;
  };
  B d2;
  d2.depth = 2;
  return {
      {"ex35", "A u = True", {}},
      {"ex35", "B u = True", {}},
      {"ex35", "A u = False", {}},
      {"conj", "conj3 a b c = True", {}},
      {"conj", "conj3 a b c = False", {}},
      {"lists", "sorted l = True", ints(0, 1, 4)},
      {"lists", "sorted l = False", ints(0, 1, 4)},
      {"lists", "member x l = True", ints(0, 1, 4)},
      {"lists", "distinct l = True", ints(0, 1, 4)},
      {"lists", "length l n = True", ints(0, 1, 3)},
      {"bst", "bst 4 0 3 t = True", ints(1, 2, 3)},
      {"bst", "bst 4 0 3 t = False", ints(1, 2, 3)},
      {"isRBT", "isRBT 1 0 3 Black t = True", ints(1, 1, 3)},
      {"isRBT", "isRBT 0 0 3 Red t = True", ints(1, 1, 3)},
      {"isRedex", "isRedex t = True", d2},
      {"isRedex", "isRedex t = False", d2},
  };
}

void PrintTo(const CorpusQuery& q, std::ostream* os) {
  *os << q.program << ":" << q.text;
}

}  // namespace luck::testing
