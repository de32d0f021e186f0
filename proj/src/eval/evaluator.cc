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

#include "luck/eval/evaluator.h"

#include <limits>
#include <utility>

#include "luck/core/program.h"
#include "luck/support/error.h"

namespace luck {
namespace {

constexpr int kMaxDepth = 4000;

ValuePtr bool_value(bool b) {
  return b ? val::true_value() : val::false_value();
}

// The value of a closed constructor expression, or nullptr.
ValuePtr constant_value(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kUnit:
      return val::unit();
    case ExprKind::kInt:
      return val::integer(e.value);
    case ExprKind::kPair: {
      ValuePtr a = constant_value(*e.a);
      if (a == nullptr) return nullptr;
      ValuePtr b = constant_value(*e.b);
      return b ? val::pair(std::move(a), std::move(b)) : nullptr;
    }
    case ExprKind::kInl:
    case ExprKind::kInr:
    case ExprKind::kFold: {
      ValuePtr a = constant_value(*e.a);
      if (a == nullptr) return nullptr;
      if (e.kind == ExprKind::kInl) return val::inl(e.annot, std::move(a));
      if (e.kind == ExprKind::kInr) return val::inr(e.annot, std::move(a));
      return val::fold(e.annot, std::move(a));
    }
    default:
      return nullptr;
  }
}

}  // namespace

class Evaluator::Depth {
 public:
  explicit Depth(Evaluator* ev) : ev_(ev) {
    if (++ev_->depth_ > kMaxDepth) {
      --ev_->depth_;
      throw FuelExhausted();
    }
  }
  ~Depth() { --ev_->depth_; }

 private:
  Evaluator* ev_;
};

Evaluator::Evaluator(ChoiceSource& choices, EvalOptions options)
    : choices_(choices), options_(options) {}

void Evaluator::tick() {
  if (++stats_.steps > options_.fuel) throw FuelExhausted();
}

ValuePtr Evaluator::narrow(const Expr& e, const EnvPtr& env,
                           ConstraintSet& k, Trace& t) {
  return narrow_node(&e, env, k, t);
}

bool Evaluator::match(const Expr& e, const EnvPtr& env, const ValuePtr& p,
                      ConstraintSet& k, Trace& t) {
  return match_node(&e, env, p, k, t);
}

// ---------------------------------------------------------------------------
// choose and sampling

std::optional<Side> Evaluator::choose(uint64_t n1, const ConstraintSet& k1,
                                      uint64_t n2, const ConstraintSet& k2,
                                      Trace& t) {
  const bool left = k1.sat() && n1 > 0;
  const bool right = k2.sat() && n2 > 0;
  if (left && right) {
    if (n1 > std::numeric_limits<uint64_t>::max() - n2) {
      throw RuntimeError("instantiation weights overflow");
    }
    const uint64_t w[2] = {n1, n2};
    const uint32_t m = choices_.pick(w, 2);
    t.add(Choice{m, 2, w[m], n1 + n2});
    return m == 0 ? Side::kLeft : Side::kRight;
  }
  if (left) return Side::kLeft;
  if (right) return Side::kRight;
  return std::nullopt;
}

bool Evaluator::sample_unknown(uint32_t u, ConstraintSet& k, Trace& t) {
  if (k.index(u) != nullptr) return true;
  if (auto n = k.cheap_sample_size(u)) {
    if (*n > std::numeric_limits<uint32_t>::max()) {
      throw ContractViolation("domain of ?u" + std::to_string(u) +
                              " too large to sample");
    }
    const uint32_t size = static_cast<uint32_t>(*n);
    if (size == 0) return false;
    if (size == 1) {
      k = k.cheap_sample_at(u, 0);
      return true;
    }
    const uint32_t m = choices_.pick_uniform(size);
    t.add(Choice{m, size, 1, size});
    k = k.cheap_sample_at(u, m);
    return true;
  }
  std::vector<ConstraintSet> options = k.sample(u, options_.enumeration_cap);
  if (options.empty()) return false;
  if (options.size() == 1) {
    k = std::move(options.front());
    return true;
  }
  const uint32_t size = static_cast<uint32_t>(options.size());
  const uint32_t m = choices_.pick_uniform(size);
  t.add(Choice{m, size, 1, size});
  k = std::move(options[m]);
  return true;
}

bool Evaluator::sample_value(const ValuePtr& v, ConstraintSet& k, Trace& t) {
  switch (v->kind) {
    case ValueKind::kUnit:
    case ValueKind::kInt:
    case ValueKind::kClosure:
      return true;
    case ValueKind::kPair:
      return sample_value(v->a, k, t) && sample_value(v->b, k, t);
    case ValueKind::kInl:
    case ValueKind::kInr:
    case ValueKind::kFold:
      return sample_value(v->a, k, t);
    case ValueKind::kUnknown:
      return sample_unknown(v->unknown, k, t);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Destructuring values that may be unknowns

std::optional<std::pair<ValuePtr, ValuePtr>> Evaluator::split_pair(
    const ValuePtr& v, Type pair, ConstraintSet& k) {
  ValuePtr shown = v;
  if (v->kind == ValueKind::kUnknown) {
    if (ValuePtr e = k.expose(v->unknown)) shown = e;
  }
  if (shown->kind == ValueKind::kPair) {
    return std::make_pair(shown->a, shown->b);
  }
  if (shown->kind != ValueKind::kUnknown) {
    throw RuntimeError("expected a pair, got " + value_to_string(*v));
  }
  const uint32_t u1 = k.fresh(pair->left);
  const uint32_t u2 = k.fresh(pair->right);
  ValuePtr a = val::unknown(u1), b = val::unknown(u2);
  k.unify(v, val::pair(a, b));
  if (!k.sat()) return std::nullopt;
  return std::make_pair(std::move(a), std::move(b));
}

ValuePtr Evaluator::split_fold(const ValuePtr& v, Type mu, ConstraintSet& k) {
  ValuePtr shown = v;
  if (v->kind == ValueKind::kUnknown) {
    if (ValuePtr e = k.expose(v->unknown)) shown = e;
  }
  if (shown->kind == ValueKind::kFold) return shown->a;
  if (shown->kind != ValueKind::kUnknown) {
    throw RuntimeError("expected a fold, got " + value_to_string(*v));
  }
  const uint32_t u = k.fresh(unfold_type(mu));
  ValuePtr inner = val::unknown(u);
  k.unify(v, val::fold(mu, inner));
  return k.sat() ? inner : nullptr;
}

std::optional<Evaluator::Split> Evaluator::split_sum(const ValuePtr& v,
                                                     Type sum, uint64_t n1,
                                                     uint64_t n2,
                                                     ConstraintSet& k,
                                                     Trace& t) {
  ValuePtr shown = v;
  if (v->kind == ValueKind::kUnknown) {
    if (ValuePtr e = k.expose(v->unknown)) shown = e;
  }
  if (shown->kind == ValueKind::kInl) {
    if (n1 == 0) return std::nullopt;
    return Split{Side::kLeft, shown->a};
  }
  if (shown->kind == ValueKind::kInr) {
    if (n2 == 0) return std::nullopt;
    return Split{Side::kRight, shown->a};
  }
  if (shown->kind != ValueKind::kUnknown) {
    throw RuntimeError("expected a sum, got " + value_to_string(*v));
  }
  const uint32_t ul = k.fresh(sum->left);
  const uint32_t ur = k.fresh(sum->right);
  ConstraintSet kl = k;
  kl.unify(v, val::inl(sum, val::unknown(ul)));
  ConstraintSet kr = k;
  kr.unify(v, val::inr(sum, val::unknown(ur)));
  std::optional<Side> side = choose(n1, kl, n2, kr, t);
  if (!side) return std::nullopt;
  if (*side == Side::kLeft) {
    k = std::move(kl);
    return Split{Side::kLeft, val::unknown(ul)};
  }
  k = std::move(kr);
  return Split{Side::kRight, val::unknown(ur)};
}

ValuePtr Evaluator::pattern_injection(const ValuePtr& p, Side side, Type sum,
                                      ConstraintSet& k) {
  ValuePtr shown = p;
  if (p->kind == ValueKind::kUnknown) {
    if (ValuePtr e = k.expose(p->unknown)) shown = e;
  }
  const ValueKind want =
      side == Side::kLeft ? ValueKind::kInl : ValueKind::kInr;
  if (shown->kind == want) return shown->a;
  if (shown->kind != ValueKind::kUnknown) return nullptr;
  const uint32_t u = k.fresh(side == Side::kLeft ? sum->left : sum->right);
  ValuePtr inner = val::unknown(u);
  k.unify(p, side == Side::kLeft ? val::inl(sum, inner)
                                 : val::inr(sum, inner));
  return k.sat() ? inner : nullptr;
}

std::optional<std::pair<uint64_t, uint64_t>> Evaluator::weights(
    const Expr& inst, const EnvPtr& env, ConstraintSet& k, Trace& t) {
  ValuePtr w1 = narrow_node(inst.b.get(), env, k, t);
  if (w1 == nullptr) return std::nullopt;
  ValuePtr w2 = narrow_node(inst.c.get(), env, k, t);
  if (w2 == nullptr) return std::nullopt;
  if (!sample_value(w1, k, t) || !sample_value(w2, k, t)) {
    return std::nullopt;
  }
  const uint64_t n1 = nat_of(k, w1);
  const uint64_t n2 = nat_of(k, w2);
  if (n1 == 0 && n2 == 0) {
    throw RuntimeError("instantiation with both weights zero");
  }
  return std::make_pair(n1, n2);
}

bool Evaluator::constant_mismatch(const Expr& body, const ValuePtr& p,
                                  const ConstraintSet& k) const {
  ValuePtr v = constant_value(body);
  if (v == nullptr) return false;
  ConstraintSet probe = k;
  probe.unify(v, p);
  return !probe.sat();
}

// ---------------------------------------------------------------------------
// Integers

namespace {

std::optional<int64_t> int_of(const ValuePtr& v, const ConstraintSet& k) {
  if (v->kind == ValueKind::kInt) return v->number;
  if (v->kind == ValueKind::kUnknown) return k.int_value(v->unknown);
  throw RuntimeError("expected an integer, got " + value_to_string(*v));
}

IntTerm term_of(const ValuePtr& v, const ConstraintSet& k) {
  if (auto n = int_of(v, k)) return IntTerm::lit(*n);
  return IntTerm::var(v->unknown);
}

}  // namespace

ValuePtr Evaluator::arith(const Expr* e, const EnvPtr& env, ConstraintSet& k,
                          Trace& t) {
  ValuePtr a = narrow_node(e->a.get(), env, k, t);
  if (a == nullptr) return nullptr;
  ValuePtr b = narrow_node(e->b.get(), env, k, t);
  if (b == nullptr) return nullptr;
  const auto op = static_cast<ArithOp>(e->op);
  std::optional<int64_t> x = int_of(a, k);
  std::optional<int64_t> y = int_of(b, k);
  if (x && y) return val::integer(apply_arith(op, *x, *y));
  // An unknown shifted by a constant stays symbolic.
  if (op == ArithOp::kAdd || op == ArithOp::kSub) {
    std::optional<int64_t> offset;
    uint32_t base = 0;
    if (!x && y) {
      base = a->unknown;
      if (op == ArithOp::kAdd) {
        offset = *y;
      } else if (*y != std::numeric_limits<int64_t>::min()) {
        offset = -*y;
      }
    } else if (x && !y && op == ArithOp::kAdd) {
      base = b->unknown;
      offset = *x;
    }
    if (offset) {
      const uint32_t w = k.fresh(int_type());
      k.add_comparison(IntTerm::var(w), CmpOp::kEq, IntTerm::var(base),
                       *offset);
      return k.sat() ? val::unknown(w) : nullptr;
    }
  }
  if (!sample_value(a, k, t) || !sample_value(b, k, t)) return nullptr;
  return val::integer(apply_arith(op, *int_of(a, k), *int_of(b, k)));
}

// ---------------------------------------------------------------------------
// Narrowing

ValuePtr Evaluator::narrow_node(const Expr* e, EnvPtr env, ConstraintSet& k,
                                Trace& t) {
  Depth depth(this);
  for (;;) {
    tick();
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
      case ExprKind::kUnknown:
        return val::unknown(e->index);
      case ExprKind::kApp: {
        ValuePtr f = narrow_node(e->a.get(), env, k, t);
        if (f == nullptr) return nullptr;
        ValuePtr x = narrow_node(e->b.get(), env, k, t);
        if (x == nullptr) return nullptr;
        if (f->kind != ValueKind::kClosure) {
          throw RuntimeError("applying a non-function");
        }
        env = env_push(env_push(f->env, f), std::move(x));
        e = f->lam->a.get();
        continue;
      }
      case ExprKind::kPair: {
        ValuePtr a = narrow_node(e->a.get(), env, k, t);
        if (a == nullptr) return nullptr;
        ValuePtr b = narrow_node(e->b.get(), env, k, t);
        if (b == nullptr) return nullptr;
        return val::pair(std::move(a), std::move(b));
      }
      case ExprKind::kCasePair: {
        ValuePtr v = narrow_node(e->a.get(), env, k, t);
        if (v == nullptr) return nullptr;
        auto parts = split_pair(v, e->a->type, k);
        if (!parts) return nullptr;
        env = env_push(env_push(std::move(env), parts->first), parts->second);
        e = e->b.get();
        continue;
      }
      case ExprKind::kInl:
      case ExprKind::kInr:
      case ExprKind::kFold: {
        ValuePtr a = narrow_node(e->a.get(), env, k, t);
        if (a == nullptr) return nullptr;
        if (e->kind == ExprKind::kInl) return val::inl(e->annot, std::move(a));
        if (e->kind == ExprKind::kInr) return val::inr(e->annot, std::move(a));
        return val::fold(e->annot, std::move(a));
      }
      case ExprKind::kUnfold: {
        ValuePtr v = narrow_node(e->a.get(), env, k, t);
        if (v == nullptr) return nullptr;
        return split_fold(v, e->annot, k);
      }
      case ExprKind::kCase: {
        ValuePtr v = narrow_node(e->a.get(), env, k, t);
        if (v == nullptr) return nullptr;
        auto split = split_sum(v, e->a->type, 1, 1, k, t);
        if (!split) return nullptr;
        env = env_push(std::move(env), split->payload);
        e = split->side == Side::kLeft ? e->b.get() : e->c.get();
        continue;
      }
      case ExprKind::kInst: {
        ValuePtr v = narrow_node(e->a.get(), env, k, t);
        if (v == nullptr) return nullptr;
        auto w = weights(*e, env, k, t);
        if (!w) return nullptr;
        if (!split_sum(v, e->a->type, w->first, w->second, k, t)) {
          return nullptr;
        }
        return v;
      }
      case ExprKind::kBang: {
        ValuePtr v = narrow_node(e->a.get(), env, k, t);
        if (v == nullptr || !sample_value(v, k, t)) return nullptr;
        return v;
      }
      case ExprKind::kAfter: {
        ValuePtr v = narrow_node(e->a.get(), env, k, t);
        if (v == nullptr) return nullptr;
        if (narrow_node(e->b.get(), env, k, t) == nullptr) return nullptr;
        return v;
      }
      case ExprKind::kArith:
        return arith(e, env, k, t);
      case ExprKind::kCompare: {
        ValuePtr a = narrow_node(e->a.get(), env, k, t);
        if (a == nullptr) return nullptr;
        ValuePtr b = narrow_node(e->b.get(), env, k, t);
        if (b == nullptr) return nullptr;
        const auto op = static_cast<CmpOp>(e->op);
        const IntTerm x = term_of(a, k);
        const IntTerm y = term_of(b, k);
        if (!x.is_unknown && !y.is_unknown) {
          return bool_value(compare_ints(op, x.value, y.value));
        }
        ConstraintSet yes = k;
        yes.add_comparison(x, op, y);
        ConstraintSet no = k;
        no.add_comparison(x, negate(op), y);
        auto side = choose(1, yes, 1, no, t);
        if (!side) return nullptr;
        k = *side == Side::kLeft ? std::move(yes) : std::move(no);
        return bool_value(*side == Side::kLeft);
      }
      case ExprKind::kFail:
        return nullptr;
    }
  }
}

// ---------------------------------------------------------------------------
// Matching

bool Evaluator::match_node(const Expr* e, EnvPtr env, ValuePtr p,
                           ConstraintSet& k, Trace& t) {
  Depth depth(this);
  for (;;) {
    tick();
    switch (e->kind) {
      case ExprKind::kVar:
      case ExprKind::kUnit:
      case ExprKind::kInt:
      case ExprKind::kUnknown:
      case ExprKind::kArith: {
        ValuePtr v = narrow_node(e, env, k, t);
        if (v == nullptr) return false;
        k.unify(v, p);
        return k.sat();
      }
      case ExprKind::kLam:
      case ExprKind::kGlobal:
        throw ContractViolation("matching a function against a pattern");
      case ExprKind::kPair: {
        auto parts = split_pair(p, e->type, k);
        if (!parts) return false;
        if (!match_node(e->a.get(), env, parts->first, k, t)) return false;
        p = parts->second;
        e = e->b.get();
        continue;
      }
      case ExprKind::kCasePair: {
        const Expr* scrutinee = e->a.get();
        std::optional<std::pair<ValuePtr, ValuePtr>> parts;
        if (!is_arrow_free(scrutinee->type)) {
          ValuePtr v = narrow_node(scrutinee, env, k, t);
          if (v == nullptr) return false;
          parts = split_pair(v, scrutinee->type, k);
        } else {
          const uint32_t u1 = k.fresh(scrutinee->type->left);
          const uint32_t u2 = k.fresh(scrutinee->type->right);
          parts = std::make_pair(val::unknown(u1), val::unknown(u2));
          if (!match_node(scrutinee, env, val::pair(parts->first,
                                                    parts->second),
                          k, t)) {
            return false;
          }
        }
        if (!parts) return false;
        env = env_push(env_push(std::move(env), parts->first), parts->second);
        e = e->b.get();
        continue;
      }
      case ExprKind::kInl:
      case ExprKind::kInr: {
        ValuePtr inner = pattern_injection(
            p, e->kind == ExprKind::kInl ? Side::kLeft : Side::kRight,
            e->annot, k);
        if (inner == nullptr) return false;
        p = std::move(inner);
        e = e->a.get();
        continue;
      }
      case ExprKind::kFold: {
        ValuePtr inner = split_fold(p, e->annot, k);
        if (inner == nullptr) return false;
        p = std::move(inner);
        e = e->a.get();
        continue;
      }
      case ExprKind::kUnfold:
        p = val::fold(e->annot, std::move(p));
        e = e->a.get();
        continue;
      case ExprKind::kApp: {
        ValuePtr f = narrow_node(e->a.get(), env, k, t);
        if (f == nullptr) return false;
        ValuePtr x = narrow_node(e->b.get(), env, k, t);
        if (x == nullptr) return false;
        if (f->kind != ValueKind::kClosure) {
          throw RuntimeError("applying a non-function");
        }
        env = env_push(env_push(f->env, f), std::move(x));
        e = f->lam->a.get();
        continue;
      }
      case ExprKind::kCase:
        if (e->narrow_discriminee) {
          return match_weighted_case(e, env, p, k, t);
        }
        if (!is_arrow_free(e->a->type)) {
          ValuePtr v = narrow_node(e->a.get(), env, k, t);
          if (v == nullptr) return false;
          auto split = split_sum(v, e->a->type, 1, 1, k, t);
          if (!split) return false;
          env = env_push(std::move(env), split->payload);
          e = split->side == Side::kLeft ? e->b.get() : e->c.get();
          continue;
        }
        return match_case(e, env, p, k, t);
      case ExprKind::kInst: {
        if (!match_node(e->a.get(), env, p, k, t)) return false;
        auto w = weights(*e, env, k, t);
        if (!w) return false;
        return split_sum(p, e->a->type, w->first, w->second, k, t)
            .has_value();
      }
      case ExprKind::kBang:
        if (!match_node(e->a.get(), env, p, k, t)) return false;
        return sample_value(p, k, t);
      case ExprKind::kAfter:
        if (!match_node(e->a.get(), env, p, k, t)) return false;
        return narrow_node(e->b.get(), env, k, t) != nullptr;
      case ExprKind::kCompare:
        return match_compare(e, env, p, k, t);
      case ExprKind::kFail:
        return false;
    }
  }
}

bool Evaluator::match_case(const Expr* e, const EnvPtr& env,
                           const ValuePtr& p, ConstraintSet& k, Trace& t) {
  const Expr* scrutinee = e->a.get();
  const Type sum = scrutinee->type;
  ConstraintSet base = k;
  const uint32_t ul = base.fresh(sum->left);
  const uint32_t ur = base.fresh(sum->right);
  const ValuePtr left = val::unknown(ul);
  const ValuePtr right = val::unknown(ur);

  bool try_left = true, try_right = true;
  if (options_.prune) {
    try_left = !constant_mismatch(*e->b, p, base);
    try_right = !constant_mismatch(*e->c, p, base);
  }

  Trace t1, t2, t1b, t2b;
  std::optional<ConstraintSet> k1, k2;
  if (try_left) {
    ConstraintSet s = base;
    if (match_node(scrutinee, env, val::inl(sum, left), s, t1)) {
      k1 = std::move(s);
    }
  }
  if (try_right) {
    ConstraintSet s = base;
    if (match_node(scrutinee, env, val::inr(sum, right), s, t2)) {
      k2 = std::move(s);
    }
  }
  std::optional<ConstraintSet> ka, kb;
  if (k1) {
    ConstraintSet s = std::move(*k1);
    if (match_node(e->b.get(), env_push(env, left), p, s, t1b)) {
      ka = std::move(s);
    }
  }
  if (k2) {
    ConstraintSet s = std::move(*k2);
    if (match_node(e->c.get(), env_push(env, right), p, s, t2b)) {
      kb = std::move(s);
    }
  }
  t.append(t1);
  t.append(t2);
  t.append(t1b);
  t.append(t2b);
  std::optional<ConstraintSet> out = join(base, ka, kb, t);
  if (!out) return false;
  k = std::move(*out);
  return true;
}

std::optional<ConstraintSet> Evaluator::join(
    const ConstraintSet& base, const std::optional<ConstraintSet>& a,
    const std::optional<ConstraintSet>& b, Trace& t) {
  if (!a) return b;
  if (!b) return a;
  bool exact = true;
  ConstraintSet both = ConstraintSet::union_of(
      *a, b->rename_since(base, a->next_unknown()), &exact);
  if (exact) return both;
  // Ranges cannot hold this union; keep one side, as narrowing would.
  const uint64_t w[2] = {1, 1};
  const uint32_t m = choices_.pick(w, 2);
  t.add(Choice{m, 2, 1, 2});
  return m == 0 ? a : b;
}

bool Evaluator::match_weighted_case(const Expr* e, const EnvPtr& env,
                                    const ValuePtr& p, ConstraintSet& k,
                                    Trace& t) {
  const Expr* scrutinee = e->a.get();
  const Expr* value_expr = scrutinee;
  uint64_t n1 = 1, n2 = 1;
  ValuePtr v;
  if (scrutinee->kind == ExprKind::kInst) {
    value_expr = scrutinee->a.get();
    v = narrow_node(value_expr, env, k, t);
    if (v == nullptr) return false;
    auto w = weights(*scrutinee, env, k, t);
    if (!w) return false;
    n1 = w->first;
    n2 = w->second;
  } else {
    v = narrow_node(scrutinee, env, k, t);
    if (v == nullptr) return false;
  }
  const Type sum = value_expr->type;

  ValuePtr shown = v;
  if (v->kind == ValueKind::kUnknown) {
    if (ValuePtr x = k.expose(v->unknown)) shown = x;
  }
  if (shown->kind == ValueKind::kInl || shown->kind == ValueKind::kInr) {
    const bool is_left = shown->kind == ValueKind::kInl;
    if ((is_left ? n1 : n2) == 0) return false;
    return match_node(is_left ? e->b.get() : e->c.get(),
                      env_push(env, shown->a), p, k, t);
  }
  if (shown->kind != ValueKind::kUnknown) {
    throw RuntimeError("expected a sum, got " + value_to_string(*v));
  }

  const uint32_t ul = k.fresh(sum->left);
  const uint32_t ur = k.fresh(sum->right);
  ConstraintSet kl = k;
  kl.unify(v, val::inl(sum, val::unknown(ul)));
  ConstraintSet kr = k;
  kr.unify(v, val::inr(sum, val::unknown(ur)));
  const bool left_ok = kl.sat() && n1 > 0;
  const bool right_ok = kr.sat() && n2 > 0;
  auto attempt = [&](Side side, Trace& sub) -> std::optional<ConstraintSet> {
    ConstraintSet s = side == Side::kLeft ? kl : kr;
    const Expr* body = side == Side::kLeft ? e->b.get() : e->c.get();
    ValuePtr payload = val::unknown(side == Side::kLeft ? ul : ur);
    if (match_node(body, env_push(env, payload), p, s, sub)) return s;
    return std::nullopt;
  };
  if (!left_ok && !right_ok) return false;
  if (!left_ok || !right_ok) {
    auto r = attempt(left_ok ? Side::kLeft : Side::kRight, t);
    if (!r) return false;
    k = std::move(*r);
    return true;
  }
  const uint64_t w[2] = {n1, n2};
  if (n1 > std::numeric_limits<uint64_t>::max() - n2) {
    throw RuntimeError("instantiation weights overflow");
  }
  const uint32_t m = choices_.pick(w, 2);
  const Side first = m == 0 ? Side::kLeft : Side::kRight;
  Trace sub;
  if (auto r = attempt(first, sub)) {
    t.add(Choice{m, 2, w[m], n1 + n2});
    t.append(sub);
    k = std::move(*r);
    return true;
  }
  if (options_.local_backtracking) {
    ++stats_.local_backtracks;
    const uint32_t other = 1 - m;
    Trace retry;
    if (auto r = attempt(other == 0 ? Side::kLeft : Side::kRight, retry)) {
      t.add(Choice{other, 2, w[other], n1 + n2});
      t.append(retry);
      k = std::move(*r);
      return true;
    }
  }
  t.add(Choice{m, 2, w[m], n1 + n2});
  t.append(sub);
  return false;
}

bool Evaluator::match_compare(const Expr* e, const EnvPtr& env,
                              const ValuePtr& p, ConstraintSet& k, Trace& t) {
  ValuePtr a = narrow_node(e->a.get(), env, k, t);
  if (a == nullptr) return false;
  ValuePtr b = narrow_node(e->b.get(), env, k, t);
  if (b == nullptr) return false;
  const auto op = static_cast<CmpOp>(e->op);
  const IntTerm x = term_of(a, k);
  const IntTerm y = term_of(b, k);
  if (!x.is_unknown && !y.is_unknown) {
    k.unify(bool_value(compare_ints(op, x.value, y.value)), p);
    return k.sat();
  }
  std::optional<ConstraintSet> yes, no;
  {
    ConstraintSet s = k;
    s.unify(p, val::true_value());
    s.add_comparison(x, op, y);
    if (s.sat()) yes = std::move(s);
  }
  {
    ConstraintSet s = k;
    s.unify(p, val::false_value());
    s.add_comparison(x, negate(op), y);
    if (s.sat()) no = std::move(s);
  }
  std::optional<ConstraintSet> out = join(k, yes, no, t);
  if (!out) return false;
  k = std::move(*out);
  return true;
}

// ---------------------------------------------------------------------------
// Free functions

std::optional<NarrowOutcome> narrow(const Expr& e, const ConstraintSet& k,
                                    ChoiceSource& choices,
                                    const EvalOptions& options) {
  Evaluator ev(choices, options);
  NarrowOutcome out{nullptr, k, {}};
  out.value = ev.narrow(e, nullptr, out.kappa, out.trace);
  if (out.value == nullptr || !out.kappa.sat()) return std::nullopt;
  return out;
}

MatchOutcome match_eval(const Expr& e, const ValuePtr& p,
                        const ConstraintSet& k, ChoiceSource& choices,
                        const EvalOptions& options) {
  Evaluator ev(choices, options);
  MatchOutcome out;
  ConstraintSet s = k;
  if (ev.match(e, nullptr, p, s, out.trace) && s.sat()) {
    out.result = std::move(s);
  }
  return out;
}

Side choose(uint64_t n1, const ConstraintSet& k1, uint64_t n2,
            const ConstraintSet& k2, ChoiceSource& choices, Trace& t) {
  Evaluator ev(choices);
  auto side = ev.choose(n1, k1, n2, k2, t);
  if (!side) {
    throw ContractViolation("choose: neither side is available");
  }
  return *side;
}

std::optional<ConstraintSet> sample_value(const ValuePtr& v,
                                          const ConstraintSet& k,
                                          ChoiceSource& choices, Trace& t) {
  Evaluator ev(choices);
  ConstraintSet s = k;
  if (!ev.sample_value(v, s, t)) return std::nullopt;
  return s;
}

uint64_t nat_of(const ConstraintSet& k, const ValuePtr& v) {
  uint64_t n = 0;
  const Value* cur = v.get();
  ValuePtr hold;
  for (;;) {
    switch (cur->kind) {
      case ValueKind::kInt:
        return cur->number < 0 ? n : n + static_cast<uint64_t>(cur->number);
      case ValueKind::kUnknown: {
        hold = k.index(cur->unknown);
        if (hold == nullptr) {
          throw ContractViolation("weight ?u" + std::to_string(cur->unknown) +
                                  " is not determined");
        }
        cur = hold.get();
        continue;
      }
      case ValueKind::kFold: {
        const Value* body = cur->a.get();
        if (body->kind == ValueKind::kUnknown) {
          hold = k.index(body->unknown);
          if (hold == nullptr) {
            throw ContractViolation("weight is not determined");
          }
          body = hold.get();
        }
        if (body->kind == ValueKind::kInl) return n;
        if (body->kind != ValueKind::kInr) {
          throw ContractViolation("weight is not a natural number");
        }
        ++n;
        ValuePtr next = body->a;
        hold = next;
        cur = hold.get();
        continue;
      }
      default:
        throw ContractViolation("weight is not a natural number: " +
                                value_to_string(*cur));
    }
  }
}

std::optional<ConstraintSet> combine(const ConstraintSet& base,
                                     const std::optional<ConstraintSet>& a,
                                     const std::optional<ConstraintSet>& b) {
  if (!a) return b;
  if (!b) return a;
  return ConstraintSet::union_of(
      *a, b->rename_since(base, a->next_unknown()));
}

}  // namespace luck
