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

#ifndef LUCK_EVAL_EVALUATOR_H_
#define LUCK_EVAL_EVALUATOR_H_

#include <cstdint>
#include <optional>

#include "luck/constraints/constraint_set.h"
#include "luck/core/expr.h"
#include "luck/core/value.h"
#include "luck/eval/predicate.h"
#include "luck/eval/trace.h"
#include "luck/support/random.h"

namespace luck {

struct EvalOptions {
  uint64_t fuel = kDefaultFuel;
  // Retry the sibling arm once when a weighted surface case fails.
  bool local_backtracking = true;
  // Skip a constraint-solving case arm whose body is a constant that
  // cannot unify with the target pattern. Changes traces, not outcomes.
  bool prune = true;
  uint64_t enumeration_cap = ConstraintSet::kDefaultEnumerationCap;
};

struct EvalStats {
  uint64_t steps = 0;
  uint64_t local_backtracks = 0;
};

enum class Side { kLeft, kRight };

// Narrowing and matching evaluation over one constraint store. The store
// and trace are threaded by reference; after a failed call their contents
// are unspecified.
class Evaluator {
 public:
  Evaluator(ChoiceSource& choices, EvalOptions options = {});

  // The value of e, or nullptr when evaluation reaches a failing arm or an
  // empty store.
  ValuePtr narrow(const Expr& e, const EnvPtr& env, ConstraintSet& k,
                  Trace& t);
  // Refines k so that e evaluates to p; false for the empty outcome.
  bool match(const Expr& e, const EnvPtr& env, const ValuePtr& p,
             ConstraintSet& k, Trace& t);
  // Pins every unknown inside v, left to right.
  bool sample_value(const ValuePtr& v, ConstraintSet& k, Trace& t);
  // Picks a side among the satisfiable stores with positive weight;
  // nullopt when neither qualifies.
  std::optional<Side> choose(uint64_t n1, const ConstraintSet& k1,
                             uint64_t n2, const ConstraintSet& k2, Trace& t);

  const EvalStats& stats() const { return stats_; }
  const EvalOptions& options() const { return options_; }

 private:
  struct Split {
    Side side;
    ValuePtr payload;
  };
  class Depth;

  void tick();
  ValuePtr narrow_node(const Expr* e, EnvPtr env, ConstraintSet& k,
                       Trace& t);
  bool match_node(const Expr* e, EnvPtr env, ValuePtr p, ConstraintSet& k,
                  Trace& t);
  bool match_case(const Expr* e, const EnvPtr& env, const ValuePtr& p,
                  ConstraintSet& k, Trace& t);
  bool match_weighted_case(const Expr* e, const EnvPtr& env,
                           const ValuePtr& p, ConstraintSet& k, Trace& t);
  bool match_compare(const Expr* e, const EnvPtr& env, const ValuePtr& p,
                     ConstraintSet& k, Trace& t);

  // combine, except that a union ranges can only over-approximate is
  // replaced by a fair choice between the two stores.
  std::optional<ConstraintSet> join(const ConstraintSet& base,
                                    const std::optional<ConstraintSet>& a,
                                    const std::optional<ConstraintSet>& b,
                                    Trace& t);
  std::optional<std::pair<ValuePtr, ValuePtr>> split_pair(
      const ValuePtr& v, Type pair, ConstraintSet& k);
  std::optional<Split> split_sum(const ValuePtr& v, Type sum, uint64_t n1,
                                 uint64_t n2, ConstraintSet& k, Trace& t);
  ValuePtr split_fold(const ValuePtr& v, Type mu, ConstraintSet& k);
  ValuePtr pattern_injection(const ValuePtr& p, Side side, Type sum,
                             ConstraintSet& k);
  std::optional<std::pair<uint64_t, uint64_t>> weights(const Expr& inst,
                                                       const EnvPtr& env,
                                                       ConstraintSet& k,
                                                       Trace& t);
  ValuePtr arith(const Expr* e, const EnvPtr& env, ConstraintSet& k,
                 Trace& t);
  bool sample_unknown(uint32_t u, ConstraintSet& k, Trace& t);
  bool constant_mismatch(const Expr& body, const ValuePtr& p,
                         const ConstraintSet& k) const;

  ChoiceSource& choices_;
  EvalOptions options_;
  EvalStats stats_;
  int depth_ = 0;
};

struct NarrowOutcome {
  ValuePtr value;
  ConstraintSet kappa;
  Trace trace;
};

struct MatchOutcome {
  std::optional<ConstraintSet> result;
  Trace trace;
};

// Closed-expression entry points. Throw FuelExhausted on timeout.
std::optional<NarrowOutcome> narrow(const Expr& e, const ConstraintSet& k,
                                    ChoiceSource& choices,
                                    const EvalOptions& options = {});
MatchOutcome match_eval(const Expr& e, const ValuePtr& p,
                        const ConstraintSet& k, ChoiceSource& choices,
                        const EvalOptions& options = {});

// Both stores unsatisfiable is a contract violation here.
Side choose(uint64_t n1, const ConstraintSet& k1, uint64_t n2,
            const ConstraintSet& k2, ChoiceSource& choices, Trace& t);
// nullopt if some unknown of v has no satisfiable value.
std::optional<ConstraintSet> sample_value(const ValuePtr& v,
                                          const ConstraintSet& k,
                                          ChoiceSource& choices, Trace& t);
// The natural number a fully determined Int or Peano value denotes.
uint64_t nat_of(const ConstraintSet& k, const ValuePtr& v);

std::optional<ConstraintSet> combine(const ConstraintSet& base,
                                     const std::optional<ConstraintSet>& a,
                                     const std::optional<ConstraintSet>& b);

}  // namespace luck

#endif  // LUCK_EVAL_EVALUATOR_H_
