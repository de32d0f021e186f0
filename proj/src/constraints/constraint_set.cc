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

#include "luck/constraints/constraint_set.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "luck/support/error.h"

namespace luck {
namespace {

RangePtr make_range(RangeKind kind, RangePtr a = nullptr, RangePtr b = nullptr) {
  auto r = std::make_shared<Range>();
  r->kind = kind;
  r->a = std::move(a);
  r->b = std::move(b);
  return r;
}

const RangePtr& unit_range() {
  static const RangePtr r = make_range(RangeKind::kUnit);
  return r;
}

RangePtr int_range(int64_t n) {
  auto r = std::make_shared<Range>();
  r->kind = RangeKind::kInt;
  r->number = n;
  return r;
}

RangePtr to_range(const Value& v) {
  switch (v.kind) {
    case ValueKind::kUnit:
      return unit_range();
    case ValueKind::kInt:
      return int_range(v.number);
    case ValueKind::kUnknown: {
      auto r = std::make_shared<Range>();
      r->kind = RangeKind::kRef;
      r->ref = v.unknown;
      return r;
    }
    case ValueKind::kPair:
      return make_range(RangeKind::kPair, to_range(*v.a), to_range(*v.b));
    case ValueKind::kInl:
      return make_range(RangeKind::kInl, to_range(*v.a));
    case ValueKind::kInr:
      return make_range(RangeKind::kInr, to_range(*v.a));
    case ValueKind::kFold:
      return make_range(RangeKind::kFold, to_range(*v.a));
    case ValueKind::kClosure:
      break;
  }
  throw ContractViolation("functions cannot be unified");
}

int64_t clip(__int128 v) {
  if (v > std::numeric_limits<int64_t>::max()) {
    return std::numeric_limits<int64_t>::max();
  }
  if (v < std::numeric_limits<int64_t>::min()) {
    return std::numeric_limits<int64_t>::min();
  }
  return static_cast<int64_t>(v);
}

// Values of dx that have support under x op (y + k), y ranging over dy.
IntervalSet revise(const IntervalSet& dx, CmpOp op, const IntervalSet& dy,
                   int64_t k) {
  switch (op) {
    case CmpOp::kEq:
      return dx.intersect(dy.shift(k));
    case CmpOp::kNe: {
      auto s = dy.singleton_value();
      if (!s) return dx;
      __int128 v = static_cast<__int128>(*s) + k;
      if (v != clip(v)) return dx;
      return dx.remove(static_cast<int64_t>(v));
    }
    case CmpOp::kLt:
      return dx.at_most(clip(static_cast<__int128>(dy.max()) + k - 1));
    case CmpOp::kLe:
      return dx.at_most(clip(static_cast<__int128>(dy.max()) + k));
    case CmpOp::kGt:
      return dx.at_least(clip(static_cast<__int128>(dy.min()) + k + 1));
    case CmpOp::kGe:
      return dx.at_least(clip(static_cast<__int128>(dy.min()) + k));
  }
  return dx;
}

bool holds(CmpOp op, __int128 a, __int128 b) {
  switch (op) {
    case CmpOp::kEq: return a == b;
    case CmpOp::kNe: return a != b;
    case CmpOp::kLt: return a < b;
    case CmpOp::kLe: return a <= b;
    case CmpOp::kGt: return a > b;
    case CmpOp::kGe: return a >= b;
  }
  return false;
}

std::vector<uint32_t> merge_ids(const std::vector<uint32_t>& a,
                                const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

Binding int_binding(IntervalSet d, std::vector<uint32_t> cs) {
  Binding b;
  b.kind = Binding::Kind::kInt;
  b.domain = std::move(d);
  b.constraints = std::move(cs);
  return b;
}

Binding range_binding(RangePtr r) {
  Binding b;
  b.kind = Binding::Kind::kRange;
  b.range = std::move(r);
  return b;
}

Binding any_binding(std::optional<uint32_t> depth) {
  Binding b;
  b.kind = Binding::Kind::kAny;
  b.depth = depth;
  return b;
}

}  // namespace

std::string range_to_string(const Range& r) {
  switch (r.kind) {
    case RangeKind::kUnit:
      return "()";
    case RangeKind::kInt:
      return std::to_string(r.number);
    case RangeKind::kRef:
      return "?u" + std::to_string(r.ref);
    case RangeKind::kPair:
      return "(" + range_to_string(*r.a) + ", " + range_to_string(*r.b) + ")";
    case RangeKind::kFold:
      return "fold " + range_to_string(*r.a);
    case RangeKind::kInl:
      return "inl " + range_to_string(*r.a);
    case RangeKind::kInr:
      return "inr " + range_to_string(*r.a);
    case RangeKind::kBoth:
      return "{inl " + range_to_string(*r.a) + ", inr " +
             range_to_string(*r.b) + "}";
  }
  return "?";
}

ConstraintSet::ConstraintSet(int64_t int_lo, int64_t int_hi)
    : lo_(int_lo), hi_(int_hi) {
  if (int_lo > int_hi) throw ContractViolation("empty integer universe");
}

RangePtr ConstraintSet::ref_range(uint32_t u) {
  auto r = std::make_shared<Range>();
  r->kind = RangeKind::kRef;
  r->ref = u;
  return r;
}

uint32_t ConstraintSet::fresh(Type t) {
  if (!is_arrow_free(t) || !t->closed) {
    throw ContractViolation("fresh unknown of functional or open type " +
                            type_to_string(t));
  }
  const uint32_t id = next_unknown_++;
  types_.set(id, t);
  return id;
}

std::vector<uint32_t> ConstraintSet::fresh(const std::vector<Type>& ts) {
  std::vector<uint32_t> out;
  out.reserve(ts.size());
  for (Type t : ts) out.push_back(fresh(t));
  return out;
}

Type ConstraintSet::type_of(uint32_t u) const {
  const Type* t = types_.find(u);
  if (t == nullptr) {
    throw ContractViolation("unknown ?u" + std::to_string(u) +
                            " not in the typing map");
  }
  return *t;
}

std::vector<uint32_t> ConstraintSet::unknowns() const {
  std::vector<uint32_t> out;
  types_.for_each([&](uint32_t id, const Type&) { out.push_back(id); });
  return out;
}

uint32_t ConstraintSet::find(uint32_t u) const {
  for (;;) {
    const BindingPtr* b = store_.find(u);
    if (b == nullptr || (*b)->kind != Binding::Kind::kAlias) return u;
    u = (*b)->alias;
  }
}

const Binding* ConstraintSet::binding(uint32_t u) const {
  const BindingPtr* b = store_.find(u);
  return b == nullptr ? nullptr : b->get();
}

std::vector<IntConstraint> ConstraintSet::constraints() const {
  std::vector<IntConstraint> out;
  constraints_.for_each(
      [&](uint32_t, const IntConstraint& c) { out.push_back(c); });
  return out;
}

void ConstraintSet::set_binding(uint32_t u, Binding b) {
  store_.set(u, std::make_shared<const Binding>(std::move(b)));
}

void ConstraintSet::set_alias(uint32_t from, uint32_t to) {
  Binding b;
  b.kind = Binding::Kind::kAlias;
  b.alias = to;
  set_binding(from, std::move(b));
}

IntervalSet ConstraintSet::int_domain(uint32_t u) const {
  const Binding* b = binding(find(u));
  if (b != nullptr && b->kind == Binding::Kind::kInt) return b->domain;
  return int_universe();
}

// ---------------------------------------------------------------------------
// Unification

void ConstraintSet::unify(const ValuePtr& a, const ValuePtr& b) {
  if (failed_) return;
  if (unify_ranges(to_range(*a), to_range(*b)) == nullptr) failed_ = true;
}

RangePtr ConstraintSet::unify_ranges(const RangePtr& a, const RangePtr& b) {
  if (a == b) return a;
  if (a->kind == RangeKind::kRef && b->kind == RangeKind::kRef) {
    if (!unify_refs(a->ref, b->ref)) return nullptr;
    return ref_range(find(a->ref));
  }
  if (a->kind == RangeKind::kRef) {
    if (!unify_ref_with(a->ref, b)) return nullptr;
    return a;
  }
  if (b->kind == RangeKind::kRef) {
    if (!unify_ref_with(b->ref, a)) return nullptr;
    return b;
  }
  if (a->kind == RangeKind::kBoth && b->kind == RangeKind::kBoth) {
    ConstraintSet saved = *this;
    RangePtr left = unify_ranges(a->a, b->a);
    if (left != nullptr) {
      ConstraintSet after_left = *this;
      RangePtr right = unify_ranges(a->b, b->b);
      if (right != nullptr) return make_range(RangeKind::kBoth, left, right);
      *this = std::move(after_left);
      return make_range(RangeKind::kInl, left);
    }
    *this = std::move(saved);
    RangePtr right = unify_ranges(a->b, b->b);
    return right ? make_range(RangeKind::kInr, right) : nullptr;
  }
  if (a->kind == RangeKind::kBoth || b->kind == RangeKind::kBoth) {
    const RangePtr& both = a->kind == RangeKind::kBoth ? a : b;
    const RangePtr& other = a->kind == RangeKind::kBoth ? b : a;
    if (other->kind == RangeKind::kInl) {
      RangePtr inner = unify_ranges(both->a, other->a);
      return inner ? make_range(RangeKind::kInl, inner) : nullptr;
    }
    if (other->kind == RangeKind::kInr) {
      RangePtr inner = unify_ranges(both->b, other->a);
      return inner ? make_range(RangeKind::kInr, inner) : nullptr;
    }
    throw ContractViolation("ill-typed unification with a sum range");
  }
  if (a->kind != b->kind) {
    const bool injections =
        (a->kind == RangeKind::kInl || a->kind == RangeKind::kInr) &&
        (b->kind == RangeKind::kInl || b->kind == RangeKind::kInr);
    if (injections) return nullptr;
    throw ContractViolation("ill-typed unification: " + range_to_string(*a) +
                            " with " + range_to_string(*b));
  }
  switch (a->kind) {
    case RangeKind::kUnit:
      return a;
    case RangeKind::kInt:
      return a->number == b->number ? a : nullptr;
    case RangeKind::kPair: {
      RangePtr left = unify_ranges(a->a, b->a);
      if (left == nullptr) return nullptr;
      RangePtr right = unify_ranges(a->b, b->b);
      if (right == nullptr) return nullptr;
      if (left == a->a && right == a->b) return a;
      return make_range(RangeKind::kPair, left, right);
    }
    case RangeKind::kFold:
    case RangeKind::kInl:
    case RangeKind::kInr: {
      RangePtr inner = unify_ranges(a->a, b->a);
      if (inner == nullptr) return nullptr;
      if (inner == a->a) return a;
      return make_range(a->kind, inner);
    }
    default:
      break;
  }
  return nullptr;
}

bool ConstraintSet::unify_refs(uint32_t u, uint32_t v) {
  u = find(u);
  v = find(v);
  if (u == v) return true;
  const uint32_t lo = std::min(u, v);
  const uint32_t hi = std::max(u, v);
  Type t = type_of(lo);
  if (type_of(hi) != t) {
    throw ContractViolation("unifying unknowns of different types");
  }
  const BindingPtr* pl = store_.find(lo);
  const BindingPtr* ph = store_.find(hi);
  BindingPtr bl = pl ? *pl : nullptr;
  BindingPtr bh = ph ? *ph : nullptr;
  if (t == int_type()) {
    IntervalSet d = int_domain(lo).intersect(int_domain(hi));
    if (d.empty()) return false;
    std::vector<uint32_t> cs =
        merge_ids(bl ? bl->constraints : std::vector<uint32_t>{},
                  bh ? bh->constraints : std::vector<uint32_t>{});
    set_alias(hi, lo);
    set_binding(lo, int_binding(std::move(d), cs));
    return run_propagation(std::move(cs));
  }
  if (bh == nullptr || bh->kind == Binding::Kind::kAny) {
    set_alias(hi, lo);
    if (bh != nullptr && bh->depth) return limit_depth(lo, *bh->depth);
    return true;
  }
  if (bl == nullptr || bl->kind == Binding::Kind::kAny) {
    if (occurs(lo, bh->range)) return false;
    set_alias(hi, lo);
    set_binding(lo, range_binding(bh->range));
    if (bl != nullptr && bl->depth) return limit_depth(lo, *bl->depth);
    return true;
  }
  if (occurs(lo, bh->range) || occurs(hi, bl->range)) return false;
  set_alias(hi, lo);
  RangePtr r = unify_ranges(bl->range, bh->range);
  if (r == nullptr) return false;
  set_binding(lo, range_binding(std::move(r)));
  return true;
}

bool ConstraintSet::unify_ref_with(uint32_t u, const RangePtr& s) {
  u = find(u);
  Type t = type_of(u);
  if (t == int_type()) {
    if (s->kind != RangeKind::kInt) {
      throw ContractViolation("ill-typed unification with an integer");
    }
    return restrict_domain(u, IntervalSet::singleton(s->number));
  }
  const BindingPtr* pb = store_.find(u);
  BindingPtr b = pb ? *pb : nullptr;
  if (b != nullptr && b->kind == Binding::Kind::kInt) {
    throw ContractViolation("integer binding on a non-integer unknown");
  }
  if (occurs(u, s)) return false;
  if (b == nullptr || b->kind == Binding::Kind::kAny) {
    RangePtr bound = s;
    if (b != nullptr && b->depth) {
      bound = apply_depth(s, *b->depth);
      if (bound == nullptr) return false;
    }
    set_binding(u, range_binding(std::move(bound)));
    return true;
  }
  RangePtr r = unify_ranges(b->range, s);
  if (r == nullptr) return false;
  if (r != b->range) set_binding(u, range_binding(std::move(r)));
  return true;
}

bool ConstraintSet::occurs(uint32_t root, const RangePtr& r) const {
  switch (r->kind) {
    case RangeKind::kUnit:
    case RangeKind::kInt:
      return false;
    case RangeKind::kRef: {
      uint32_t w = find(r->ref);
      if (w == root) return true;
      const Binding* b = binding(w);
      return b != nullptr && b->kind == Binding::Kind::kRange &&
             occurs(root, b->range);
    }
    case RangeKind::kPair:
    case RangeKind::kBoth:
      return occurs(root, r->a) || occurs(root, r->b);
    default:
      return occurs(root, r->a);
  }
}

RangePtr ConstraintSet::apply_depth(const RangePtr& r, uint32_t depth) {
  switch (r->kind) {
    case RangeKind::kUnit:
    case RangeKind::kInt:
      return r;
    case RangeKind::kRef:
      return limit_depth(r->ref, depth) ? r : nullptr;
    case RangeKind::kPair: {
      RangePtr left = apply_depth(r->a, depth);
      if (left == nullptr) return nullptr;
      RangePtr right = apply_depth(r->b, depth);
      if (right == nullptr) return nullptr;
      if (left == r->a && right == r->b) return r;
      return make_range(RangeKind::kPair, left, right);
    }
    case RangeKind::kFold: {
      if (depth == 0) return nullptr;
      RangePtr inner = apply_depth(r->a, depth - 1);
      if (inner == nullptr) return nullptr;
      return inner == r->a ? r : make_range(RangeKind::kFold, inner);
    }
    case RangeKind::kInl:
    case RangeKind::kInr: {
      RangePtr inner = apply_depth(r->a, depth);
      if (inner == nullptr) return nullptr;
      return inner == r->a ? r : make_range(r->kind, inner);
    }
    case RangeKind::kBoth: {
      ConstraintSet saved = *this;
      RangePtr left = apply_depth(r->a, depth);
      if (left == nullptr) {
        *this = std::move(saved);
        RangePtr right = apply_depth(r->b, depth);
        return right ? make_range(RangeKind::kInr, right) : nullptr;
      }
      ConstraintSet after_left = *this;
      RangePtr right = apply_depth(r->b, depth);
      if (right == nullptr) {
        *this = std::move(after_left);
        return make_range(RangeKind::kInl, left);
      }
      if (left == r->a && right == r->b) return r;
      return make_range(RangeKind::kBoth, left, right);
    }
  }
  return nullptr;
}

bool ConstraintSet::limit_depth(uint32_t u, uint32_t depth) {
  u = find(u);
  Type t = type_of(u);
  if (!t->recursive) return true;
  if (t->min_folds > depth) return false;
  const BindingPtr* pb = store_.find(u);
  BindingPtr b = pb ? *pb : nullptr;
  if (b == nullptr || b->kind == Binding::Kind::kAny) {
    if (b != nullptr && b->depth && *b->depth <= depth) return true;
    set_binding(u, any_binding(depth));
    return true;
  }
  if (b->kind != Binding::Kind::kRange) return true;
  RangePtr r = apply_depth(b->range, depth);
  if (r == nullptr) return false;
  if (r != b->range) set_binding(u, range_binding(std::move(r)));
  return true;
}

void ConstraintSet::constrain_depth(uint32_t u, uint32_t depth) {
  if (failed_) return;
  if (!limit_depth(u, depth)) failed_ = true;
}

// ---------------------------------------------------------------------------
// Integers

bool ConstraintSet::restrict_domain(uint32_t root, const IntervalSet& d) {
  root = find(root);
  const Binding* b = binding(root);
  IntervalSet old = b && b->kind == Binding::Kind::kInt ? b->domain
                                                        : int_universe();
  IntervalSet next = old.intersect(d);
  if (next.empty()) return false;
  if (next == old && b != nullptr) return true;
  std::vector<uint32_t> cs =
      b && b->kind == Binding::Kind::kInt ? b->constraints
                                          : std::vector<uint32_t>{};
  set_binding(root, int_binding(std::move(next), cs));
  if (next == old) return true;
  return run_propagation(std::move(cs));
}

void ConstraintSet::restrict_int(uint32_t u, const IntervalSet& allowed) {
  if (failed_) return;
  if (type_of(u) != int_type()) {
    throw ContractViolation("restrict_int on a non-integer unknown");
  }
  if (!restrict_domain(u, allowed)) failed_ = true;
}

bool ConstraintSet::compare_with_literal(uint32_t u, CmpOp op, int64_t c) {
  const uint32_t root = find(u);
  IntervalSet d = int_domain(root);
  IntervalSet next;
  switch (op) {
    case CmpOp::kEq:
      next = IntervalSet::singleton(c);
      break;
    case CmpOp::kNe:
      next = d.remove(c);
      break;
    case CmpOp::kLt:
      next = d.at_most(clip(static_cast<__int128>(c) - 1));
      if (c == std::numeric_limits<int64_t>::min()) next = IntervalSet();
      break;
    case CmpOp::kLe:
      next = d.at_most(c);
      break;
    case CmpOp::kGt:
      next = d.at_least(clip(static_cast<__int128>(c) + 1));
      if (c == std::numeric_limits<int64_t>::max()) next = IntervalSet();
      break;
    case CmpOp::kGe:
      next = d.at_least(c);
      break;
  }
  return restrict_domain(root, next);
}

void ConstraintSet::add_comparison(IntTerm a, CmpOp op, IntTerm b,
                                   int64_t offset) {
  if (failed_) return;
  if (!a.is_unknown && !b.is_unknown) {
    if (!holds(op, a.value, static_cast<__int128>(b.value) + offset)) {
      failed_ = true;
    }
    return;
  }
  if (!a.is_unknown) {
    // c op u + k  <=>  u flip(op) c - k
    if (!compare_with_literal(
            b.unknown, flip(op),
            clip(static_cast<__int128>(a.value) - offset))) {
      failed_ = true;
    }
    return;
  }
  if (!b.is_unknown) {
    if (!compare_with_literal(a.unknown, op,
                              clip(static_cast<__int128>(b.value) + offset))) {
      failed_ = true;
    }
    return;
  }
  if (type_of(a.unknown) != int_type() || type_of(b.unknown) != int_type()) {
    throw ContractViolation("comparison on non-integer unknowns");
  }
  const uint32_t x = find(a.unknown);
  const uint32_t y = find(b.unknown);
  if (x == y) {
    if (!holds(op, 0, offset)) failed_ = true;
    return;
  }
  if (op == CmpOp::kEq && offset == 0) {
    if (!unify_refs(x, y)) failed_ = true;
    return;
  }
  const uint32_t id = next_constraint_++;
  constraints_.set(id, IntConstraint{a.unknown, op, b.unknown, offset});
  for (uint32_t root : {x, y}) {
    const Binding* bind = binding(root);
    IntervalSet d = bind && bind->kind == Binding::Kind::kInt
                        ? bind->domain
                        : int_universe();
    std::vector<uint32_t> cs =
        bind && bind->kind == Binding::Kind::kInt ? bind->constraints
                                                  : std::vector<uint32_t>{};
    cs.insert(std::upper_bound(cs.begin(), cs.end(), id), id);
    set_binding(root, int_binding(std::move(d), std::move(cs)));
  }
  if (!run_propagation({id})) failed_ = true;
}

bool ConstraintSet::run_propagation(std::vector<uint32_t> queue) {
  std::vector<char> queued(next_constraint_, 0);
  for (uint32_t id : queue) queued[id] = 1;
  auto enqueue_all = [&](uint32_t root, uint32_t except) {
    const Binding* b = binding(root);
    if (b == nullptr || b->kind != Binding::Kind::kInt) return;
    for (uint32_t id : b->constraints) {
      if (id != except && !queued[id]) {
        queued[id] = 1;
        queue.push_back(id);
      }
    }
  };
  while (!queue.empty()) {
    const uint32_t id = queue.back();
    queue.pop_back();
    queued[id] = 0;
    const IntConstraint* pc = constraints_.find(id);
    if (pc == nullptr) continue;
    const IntConstraint c = *pc;
    const uint32_t x = find(c.lhs);
    const uint32_t y = find(c.rhs);
    if (x == y) {
      if (!holds(c.op, 0, c.offset)) return false;
      continue;
    }
    const IntervalSet dx = int_domain(x);
    const IntervalSet dy = int_domain(y);
    IntervalSet nx = revise(dx, c.op, dy, c.offset);
    if (nx.empty()) return false;
    IntervalSet ny = revise(dy, flip(c.op), nx, -c.offset);
    if (ny.empty()) return false;
    if (!(nx == dx)) {
      const Binding* b = binding(x);
      set_binding(x, int_binding(std::move(nx), b->constraints));
      enqueue_all(x, id);
    }
    if (!(ny == dy)) {
      const Binding* b = binding(y);
      set_binding(y, int_binding(std::move(ny), b->constraints));
      enqueue_all(y, id);
    }
  }
  return true;
}

void ConstraintSet::propagate(uint32_t seed) {
  if (failed_) return;
  const Binding* b = binding(find(seed));
  if (b == nullptr || b->kind != Binding::Kind::kInt) return;
  if (!run_propagation(b->constraints)) failed_ = true;
}

// ---------------------------------------------------------------------------
// Reading values

ValuePtr ConstraintSet::determined_type(Type t) const {
  switch (t->kind) {
    case TypeKind::kUnit:
      return val::unit();
    case TypeKind::kInt:
      return lo_ == hi_ ? val::integer(lo_) : nullptr;
    case TypeKind::kProd: {
      ValuePtr a = determined_type(t->left);
      if (a == nullptr) return nullptr;
      ValuePtr b = determined_type(t->right);
      return b ? val::pair(a, b) : nullptr;
    }
    default:
      return nullptr;
  }
}

ValuePtr ConstraintSet::determined(const RangePtr& r, Type t) const {
  switch (r->kind) {
    case RangeKind::kUnit:
      return val::unit();
    case RangeKind::kInt:
      return val::integer(r->number);
    case RangeKind::kRef: {
      const uint32_t w = find(r->ref);
      if (t == int_type()) {
        auto v = int_domain(w).singleton_value();
        return v ? val::integer(*v) : nullptr;
      }
      const Binding* b = binding(w);
      if (b == nullptr || b->kind == Binding::Kind::kAny) {
        return determined_type(t);
      }
      return determined(b->range, t);
    }
    case RangeKind::kPair: {
      ValuePtr a = determined(r->a, t->left);
      if (a == nullptr) return nullptr;
      ValuePtr b = determined(r->b, t->right);
      return b ? val::pair(a, b) : nullptr;
    }
    case RangeKind::kFold: {
      ValuePtr a = determined(r->a, unfold_type(t));
      return a ? val::fold(t, a) : nullptr;
    }
    case RangeKind::kInl: {
      ValuePtr a = determined(r->a, t->left);
      return a ? val::inl(t, a) : nullptr;
    }
    case RangeKind::kInr: {
      ValuePtr a = determined(r->a, t->right);
      return a ? val::inr(t, a) : nullptr;
    }
    case RangeKind::kBoth:
      return nullptr;
  }
  return nullptr;
}

ValuePtr ConstraintSet::index(uint32_t u) const {
  if (failed_) throw ContractViolation("index on a failed store");
  return determined(ref_range(u), type_of(u));
}

ValuePtr ConstraintSet::range_value(const RangePtr& r, Type t) const {
  switch (r->kind) {
    case RangeKind::kUnit:
      return val::unit();
    case RangeKind::kInt:
      return val::integer(r->number);
    case RangeKind::kRef:
      return val::unknown(r->ref);
    case RangeKind::kPair: {
      ValuePtr a = range_value(r->a, t->left);
      if (a == nullptr) return nullptr;
      ValuePtr b = range_value(r->b, t->right);
      return b ? val::pair(std::move(a), std::move(b)) : nullptr;
    }
    case RangeKind::kFold: {
      ValuePtr a = range_value(r->a, unfold_type(t));
      return a ? val::fold(t, std::move(a)) : nullptr;
    }
    case RangeKind::kInl: {
      ValuePtr a = range_value(r->a, t->left);
      return a ? val::inl(t, std::move(a)) : nullptr;
    }
    case RangeKind::kInr: {
      ValuePtr a = range_value(r->a, t->right);
      return a ? val::inr(t, std::move(a)) : nullptr;
    }
    case RangeKind::kBoth:
      return nullptr;
  }
  return nullptr;
}

ValuePtr ConstraintSet::expose(uint32_t u) const {
  const uint32_t w = find(u);
  const Type t = type_of(w);
  if (t == int_type()) {
    auto v = int_domain(w).singleton_value();
    return v ? val::integer(*v) : nullptr;
  }
  const Binding* b = binding(w);
  if (b == nullptr || b->kind != Binding::Kind::kRange) {
    return t->kind == TypeKind::kUnit ? val::unit() : nullptr;
  }
  return range_value(b->range, t);
}

std::optional<int64_t> ConstraintSet::int_value(uint32_t u) const {
  return int_domain(u).singleton_value();
}

// ---------------------------------------------------------------------------
// Enumeration and sampling

class StoreEnumerator {
 public:
  using K = std::function<bool(const ConstraintSet&, const ValuePtr&)>;

  explicit StoreEnumerator(uint64_t cap) : cap_(cap) {}

  bool range(const ConstraintSet& s, const RangePtr& r, Type t, const K& k) {
    switch (r->kind) {
      case RangeKind::kUnit:
        tick();
        return k(s, val::unit());
      case RangeKind::kInt:
        tick();
        return k(s, val::integer(r->number));
      case RangeKind::kRef: {
        const uint32_t w = s.find(r->ref);
        if (t == int_type()) {
          IntervalSet d = s.int_domain(w);
          if (d.size() > cap_) too_large();
          const Binding* b = s.binding(w);
          const bool free =
              b == nullptr || b->kind != Binding::Kind::kInt ||
              b->constraints.empty();
          for (const auto& [lo, hi] : d.parts()) {
            for (int64_t v = lo;; ++v) {
              tick();
              ConstraintSet pinned = s;
              if (free) {
                pinned.set_binding(
                    w, int_binding(IntervalSet::singleton(v),
                                   b ? b->constraints
                                     : std::vector<uint32_t>{}));
              } else if (!pinned.restrict_domain(w,
                                                 IntervalSet::singleton(v))) {
                if (v == hi) break;
                continue;
              }
              if (!k(pinned, val::integer(v))) return false;
              if (v == hi) break;
            }
          }
          return true;
        }
        const Binding* b = s.binding(w);
        if (b == nullptr || b->kind == Binding::Kind::kAny) {
          std::optional<uint32_t> depth;
          if (b != nullptr) depth = b->depth;
          return type(s, t, depth, k);
        }
        return range(s, b->range, t, k);
      }
      case RangeKind::kPair:
        return range(s, r->a, t->left,
                     [&](const ConstraintSet& s1, const ValuePtr& a) {
                       return range(s1, r->b, t->right,
                                    [&](const ConstraintSet& s2,
                                        const ValuePtr& b) {
                                      return k(s2, val::pair(a, b));
                                    });
                     });
      case RangeKind::kFold:
        return range(s, r->a, unfold_type(t),
                     [&](const ConstraintSet& s1, const ValuePtr& a) {
                       return k(s1, val::fold(t, a));
                     });
      case RangeKind::kInl:
        return range(s, r->a, t->left,
                     [&](const ConstraintSet& s1, const ValuePtr& a) {
                       return k(s1, val::inl(t, a));
                     });
      case RangeKind::kInr:
        return range(s, r->a, t->right,
                     [&](const ConstraintSet& s1, const ValuePtr& a) {
                       return k(s1, val::inr(t, a));
                     });
      case RangeKind::kBoth: {
        bool go = range(s, r->a, t->left,
                        [&](const ConstraintSet& s1, const ValuePtr& a) {
                          return k(s1, val::inl(t, a));
                        });
        if (!go) return false;
        return range(s, r->b, t->right,
                     [&](const ConstraintSet& s1, const ValuePtr& a) {
                       return k(s1, val::inr(t, a));
                     });
      }
    }
    return true;
  }

  bool type(const ConstraintSet& s, Type t, std::optional<uint32_t> depth,
            const K& k) {
    switch (t->kind) {
      case TypeKind::kUnit:
        tick();
        return k(s, val::unit());
      case TypeKind::kInt: {
        IntervalSet d = s.int_universe();
        if (d.size() > cap_) too_large();
        for (const auto& [lo, hi] : d.parts()) {
          for (int64_t v = lo;; ++v) {
            tick();
            if (!k(s, val::integer(v))) return false;
            if (v == hi) break;
          }
        }
        return true;
      }
      case TypeKind::kSum: {
        bool go = type(s, t->left, depth,
                       [&](const ConstraintSet& s1, const ValuePtr& a) {
                         return k(s1, val::inl(t, a));
                       });
        if (!go) return false;
        return type(s, t->right, depth,
                    [&](const ConstraintSet& s1, const ValuePtr& a) {
                      return k(s1, val::inr(t, a));
                    });
      }
      case TypeKind::kProd:
        return type(s, t->left, depth,
                    [&](const ConstraintSet& s1, const ValuePtr& a) {
                      return type(s1, t->right, depth,
                                  [&](const ConstraintSet& s2,
                                      const ValuePtr& b) {
                                    return k(s2, val::pair(a, b));
                                  });
                    });
      case TypeKind::kMu: {
        if (!depth) {
          throw ContractViolation("infinite domain: recursive unknown " +
                                  type_to_string(t) + " has no depth bound");
        }
        if (*depth == 0) return true;
        return type(s, unfold_type(t), *depth - 1,
                    [&](const ConstraintSet& s1, const ValuePtr& a) {
                      return k(s1, val::fold(t, a));
                    });
      }
      default:
        throw ContractViolation("cannot enumerate type " + type_to_string(t));
    }
  }

 private:
  void tick() {
    if (++steps_ > cap_) too_large();
  }
  [[noreturn]] void too_large() {
    throw ContractViolation("domain exceeds the enumeration cap");
  }

  uint64_t cap_;
  uint64_t steps_ = 0;
};

void ConstraintSet::enumerate(uint32_t u, const Emit& emit,
                              uint64_t cap) const {
  if (failed_) return;
  StoreEnumerator en(cap);
  const ValuePtr unknown = val::unknown(u);
  en.range(*this, ref_range(u), type_of(u),
           [&](const ConstraintSet& s, const ValuePtr& v) {
             ConstraintSet pinned = s;
             pinned.unify(unknown, v);
             if (!pinned.sat()) return true;
             return emit(pinned, v);
           });
}

std::vector<ConstraintSet> ConstraintSet::sample(uint32_t u,
                                                 uint64_t cap) const {
  std::vector<ConstraintSet> out;
  enumerate(
      u,
      [&](const ConstraintSet& s, const ValuePtr&) {
        out.push_back(s);
        return true;
      },
      cap);
  return out;
}

std::optional<uint64_t> ConstraintSet::cheap_sample_size(uint32_t u) const {
  if (failed_ || type_of(u) != int_type()) return std::nullopt;
  const Binding* b = binding(find(u));
  if (b == nullptr) return int_universe().size();
  if (b->kind == Binding::Kind::kInt && b->constraints.empty()) {
    return b->domain.size();
  }
  return std::nullopt;
}

ConstraintSet ConstraintSet::cheap_sample_at(uint32_t u, uint64_t m) const {
  ConstraintSet out = *this;
  const uint32_t root = find(u);
  const int64_t v = int_domain(root).nth(m);
  out.set_binding(root, int_binding(IntervalSet::singleton(v), {}));
  return out;
}

// ---------------------------------------------------------------------------
// Union

class StoreMerger {
 public:
  StoreMerger(const ConstraintSet& a, const ConstraintSet& b)
      : a_(a), b_(b), out_(a) {}

  ConstraintSet run(bool* exact = nullptr) {
    out_.next_unknown_ = std::max(a_.next_unknown_, b_.next_unknown_);
    out_.next_constraint_ = std::max(a_.next_constraint_, b_.next_constraint_);
    out_.lo_ = std::min(a_.lo_, b_.lo_);
    out_.hi_ = std::max(a_.hi_, b_.hi_);

    PersistentIdMap<Type>::diff(
        a_.types_, b_.types_,
        [&](uint32_t id, const Type* ta, const Type* tb) {
          if (ta != nullptr && tb != nullptr) {
            throw ContractViolation("union: typing maps disagree on ?u" +
                                    std::to_string(id));
          }
          if (ta == nullptr) out_.types_.set(id, *tb);
        });

    PersistentIdMap<IntConstraint>::diff(
        a_.constraints_, b_.constraints_,
        [&](uint32_t id, const IntConstraint* ca, const IntConstraint* cb) {
          removed_.insert(id);
          if (ca != nullptr) removed_content_.push_back(*ca);
          if (cb != nullptr) removed_content_.push_back(*cb);
          out_.constraints_.erase(id);
        });

    std::vector<uint32_t> changed;
    PersistentIdMap<BindingPtr>::diff(
        a_.store_, b_.store_,
        [&](uint32_t id, const BindingPtr*, const BindingPtr*) {
          changed.push_back(id);
        });
    if (exact != nullptr) *exact = union_is_exact(changed);
    std::vector<std::pair<uint32_t, std::optional<Binding>>> updates;
    for (uint32_t id : changed) updates.emplace_back(id, merge_slot(id));
    for (auto& [id, b] : updates) {
      if (b) {
        out_.set_binding(id, std::move(*b));
      } else {
        out_.store_.erase(id);
      }
    }

    // Drop removed constraints from every list that may mention them.
    for (const IntConstraint& c : removed_content_) {
      for (uint32_t x : {c.lhs, c.rhs}) {
        if (!out_.types_.contains(x)) continue;
        const uint32_t root = out_.find(x);
        const Binding* b = out_.binding(root);
        if (b == nullptr || b->kind != Binding::Kind::kInt) continue;
        std::vector<uint32_t> cs;
        for (uint32_t id : b->constraints) {
          if (!removed_.count(id)) cs.push_back(id);
        }
        if (cs.size() != b->constraints.size()) {
          out_.set_binding(root, int_binding(b->domain, std::move(cs)));
        }
      }
    }
    // Kept constraints must hang off the roots they now resolve to.
    std::vector<uint32_t> all;
    out_.constraints_.for_each([&](uint32_t id, const IntConstraint& c) {
      all.push_back(id);
      for (uint32_t x : {c.lhs, c.rhs}) {
        const uint32_t root = out_.find(x);
        const Binding* b = out_.binding(root);
        std::vector<uint32_t> cs;
        IntervalSet d = out_.int_universe();
        if (b != nullptr && b->kind == Binding::Kind::kInt) {
          if (std::binary_search(b->constraints.begin(), b->constraints.end(),
                                 id)) {
            continue;
          }
          cs = b->constraints;
          d = b->domain;
        }
        cs.insert(std::upper_bound(cs.begin(), cs.end(), id), id);
        out_.set_binding(root, int_binding(std::move(d), std::move(cs)));
      }
    });
    if (!out_.run_propagation(std::move(all))) {
      throw ContractViolation("union of satisfiable stores propagated empty");
    }
    return out_;
  }

 private:
  // Whether the merged store denotes exactly the union. Stores are
  // products over their unknowns, and the product of unions is the union
  // of products only when at most one coordinate differs. Unknowns that
  // exist on one side only are local to that side and do not count.
  struct Agreement {
    bool same = true;
    bool exact = true;
  };

  bool union_is_exact(const std::vector<uint32_t>& changed) const {
    int differing = 0;
    for (uint32_t id : changed) {
      if (!a_.types_.contains(id) || !b_.types_.contains(id)) continue;
      const Binding* pa = a_.binding(id);
      const Binding* pb = b_.binding(id);
      const bool alias_a = pa != nullptr && pa->kind == Binding::Kind::kAlias;
      const bool alias_b = pb != nullptr && pb->kind == Binding::Kind::kAlias;
      if (alias_a || alias_b) {
        if (alias_a && alias_b && pa->alias == pb->alias) continue;
        return false;
      }
      const Agreement g = agree_roots(id, id, a_.type_of(id));
      if (!g.exact) return false;
      if (!g.same) ++differing;
    }
    return differing <= 1;
  }

  bool kept_constraints(const std::vector<uint32_t>& cs) const {
    for (uint32_t id : cs) {
      if (removed_.count(id)) return false;
    }
    return true;
  }

  static Agreement covering(std::optional<uint32_t> any_depth,
                            std::optional<uint32_t> other_depth) {
    if (!any_depth) return {false, true};
    return {false, other_depth && *other_depth <= *any_depth};
  }

  // Whether r holds every value of the non-recursive type t.
  static bool full(const ConstraintSet& s, const RangePtr& r, Type t) {
    if (t->recursive || t == int_type()) return false;
    switch (r->kind) {
      case RangeKind::kUnit:
        return true;
      case RangeKind::kRef: {
        const Binding* b = s.binding(s.find(r->ref));
        return b == nullptr || b->kind == Binding::Kind::kAny ||
               (b->kind == Binding::Kind::kRange && full(s, b->range, t));
      }
      case RangeKind::kPair:
        return full(s, r->a, t->left) && full(s, r->b, t->right);
      case RangeKind::kBoth:
        return full(s, r->a, t->left) && full(s, r->b, t->right);
      default:
        return false;
    }
  }

  // An unbound unknown on one side against a range on the other.
  static Agreement against_any(const ConstraintSet& any_side, uint32_t root,
                               const ConstraintSet& other_side,
                               const RangePtr& other, Type t) {
    if (full(other_side, other, t)) return {};
    return covering(depth_of(any_side, root), range_depth(other_side, other));
  }

  Agreement agree_roots(uint32_t ra, uint32_t rb, Type t) const {
    const Binding* ba = a_.binding(ra);
    const Binding* bb = b_.binding(rb);
    if (ba == bb) return {};
    if (t == int_type()) {
      const std::vector<uint32_t> none;
      const auto& ca = ba && ba->kind == Binding::Kind::kInt ? ba->constraints
                                                             : none;
      const auto& cb = bb && bb->kind == Binding::Kind::kInt ? bb->constraints
                                                             : none;
      const bool exact = ca == cb && kept_constraints(ca);
      return {exact && a_.int_domain(ra) == b_.int_domain(rb), exact};
    }
    const bool any_a = ba == nullptr || ba->kind == Binding::Kind::kAny;
    const bool any_b = bb == nullptr || bb->kind == Binding::Kind::kAny;
    if (any_a && any_b) {
      const auto da = depth_of(a_, ra), db = depth_of(b_, rb);
      return {da == db, true};
    }
    if (any_a) return against_any(a_, ra, b_, bb->range, t);
    if (any_b) return against_any(b_, rb, a_, ba->range, t);
    return agree_ranges(ba->range, bb->range, t);
  }

  // x is read in a, y in b.
  Agreement agree_ranges(const RangePtr& x, const RangePtr& y, Type t) const {
    if (x == y) return {};
    if (x->kind == RangeKind::kRef && y->kind == RangeKind::kRef) {
      if (x->ref == y->ref) return {};
      return agree_roots(a_.find(x->ref), b_.find(y->ref), t);
    }
    if (x->kind == RangeKind::kRef || y->kind == RangeKind::kRef) {
      const bool x_is_ref = x->kind == RangeKind::kRef;
      const ConstraintSet& rs = x_is_ref ? a_ : b_;
      const ConstraintSet& ss = x_is_ref ? b_ : a_;
      const RangePtr& other = x_is_ref ? y : x;
      const uint32_t root = rs.find((x_is_ref ? x : y)->ref);
      const Binding* b = rs.binding(root);
      if (t == int_type()) {
        const bool free = b == nullptr || b->kind != Binding::Kind::kInt ||
                          b->constraints.empty();
        return {free && rs.int_domain(root) ==
                            IntervalSet::singleton(other->number),
                free};
      }
      if (b == nullptr || b->kind == Binding::Kind::kAny) {
        return against_any(rs, root, ss, other, t);
      }
      return x_is_ref ? agree_ranges(b->range, other, t)
                      : agree_ranges(other, b->range, t);
    }
    switch (x->kind) {
      case RangeKind::kInt:
        return {x->number == y->number, true};
      case RangeKind::kUnit:
        return {};
      case RangeKind::kPair: {
        const Agreement l = agree_ranges(x->a, y->a, t->left);
        const Agreement r = agree_ranges(x->b, y->b, t->right);
        const int differing = !l.same + !r.same;
        return {differing == 0, l.exact && r.exact && differing <= 1};
      }
      case RangeKind::kFold:
        return agree_ranges(x->a, y->a, unfold_type(t));
      default: {
        auto side = [](const RangePtr& r, bool left) -> RangePtr {
          if (r->kind == RangeKind::kBoth) return left ? r->a : r->b;
          if (r->kind == (left ? RangeKind::kInl : RangeKind::kInr)) {
            return r->a;
          }
          return nullptr;
        };
        Agreement out;
        for (bool left : {true, false}) {
          RangePtr xs = side(x, left), ys = side(y, left);
          if (!xs && !ys) continue;
          if (!xs || !ys) {
            out.same = false;
            continue;
          }
          const Agreement g =
              agree_ranges(xs, ys, left ? t->left : t->right);
          out.same = out.same && g.same;
          out.exact = out.exact && g.exact;
        }
        return out;
      }
    }
  }

  std::optional<Binding> merge_slot(uint32_t id) {
    if (!b_.types_.contains(id)) return copy_slot(a_, id);
    if (!a_.types_.contains(id)) return copy_slot(b_, id);
    const Binding* pa = a_.binding(id);
    const Binding* pb = b_.binding(id);
    if (pa != nullptr && pb != nullptr && pa->kind == Binding::Kind::kAlias &&
        pb->kind == Binding::Kind::kAlias && pa->alias == pb->alias) {
      return *pa;
    }
    Binding merged = merge_roots(a_.find(id), b_.find(id), a_.type_of(id));
    if (merged.kind == Binding::Kind::kAny && !merged.depth) {
      return std::nullopt;
    }
    return merged;
  }

  static std::optional<Binding> copy_slot(const ConstraintSet& s, uint32_t id) {
    const Binding* b = s.binding(id);
    if (b == nullptr) return std::nullopt;
    return *b;
  }

  static std::optional<uint32_t> depth_of(const ConstraintSet& s,
                                          uint32_t root) {
    Type t = s.type_of(root);
    if (!t->recursive) return 0;
    const Binding* b = s.binding(root);
    if (b == nullptr) return std::nullopt;
    switch (b->kind) {
      case Binding::Kind::kAny:
        return b->depth;
      case Binding::Kind::kRange:
        return range_depth(s, b->range);
      default:
        return 0;
    }
  }

  static std::optional<uint32_t> range_depth(const ConstraintSet& s,
                                             const RangePtr& r) {
    switch (r->kind) {
      case RangeKind::kUnit:
      case RangeKind::kInt:
        return 0;
      case RangeKind::kRef:
        return depth_of(s, s.find(r->ref));
      case RangeKind::kPair:
      case RangeKind::kBoth: {
        auto a = range_depth(s, r->a);
        auto b = range_depth(s, r->b);
        if (!a || !b) return std::nullopt;
        return std::max(*a, *b);
      }
      case RangeKind::kFold: {
        auto a = range_depth(s, r->a);
        if (!a) return std::nullopt;
        return *a + 1;
      }
      default:
        return range_depth(s, r->a);
    }
  }

  static std::optional<uint32_t> widest(std::optional<uint32_t> a,
                                        std::optional<uint32_t> b) {
    if (!a || !b) return std::nullopt;
    return std::max(*a, *b);
  }

  std::vector<uint32_t> kept(const std::vector<uint32_t>& x,
                             const std::vector<uint32_t>& y) const {
    std::vector<uint32_t> both;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                          std::back_inserter(both));
    std::vector<uint32_t> out;
    for (uint32_t id : both) {
      if (!removed_.count(id)) out.push_back(id);
    }
    return out;
  }

  // Binding covering root ra of a and root rb of b.
  Binding merge_roots(uint32_t ra, uint32_t rb, Type t) {
    const Binding* ba = a_.binding(ra);
    const Binding* bb = b_.binding(rb);
    if (t == int_type()) {
      IntervalSet d = a_.int_domain(ra).unite(b_.int_domain(rb));
      std::vector<uint32_t> cs;
      if (ba != nullptr && bb != nullptr &&
          ba->kind == Binding::Kind::kInt && bb->kind == Binding::Kind::kInt) {
        cs = kept(ba->constraints, bb->constraints);
      }
      if (d == out_.int_universe() && cs.empty()) return any_binding({});
      return int_binding(std::move(d), std::move(cs));
    }
    const bool any_a = ba == nullptr || ba->kind == Binding::Kind::kAny;
    const bool any_b = bb == nullptr || bb->kind == Binding::Kind::kAny;
    if (any_a || any_b) {
      return any_binding(widest(depth_of(a_, ra), depth_of(b_, rb)));
    }
    return range_binding(merge_ranges(ba->range, bb->range, t));
  }

  RangePtr fresh_with(Binding b, Type t) {
    const uint32_t c = out_.fresh(t);
    if (b.kind != Binding::Kind::kAny || b.depth) {
      out_.set_binding(c, std::move(b));
    }
    return ConstraintSet::ref_range(c);
  }

  // x is read in a, y in b.
  RangePtr merge_ranges(const RangePtr& x, const RangePtr& y, Type t) {
    if (x == y) return x;
    if (x->kind == RangeKind::kRef && y->kind == RangeKind::kRef) {
      if (x->ref == y->ref) return x;
      return fresh_with(merge_roots(a_.find(x->ref), b_.find(y->ref), t), t);
    }
    if (x->kind == RangeKind::kRef || y->kind == RangeKind::kRef) {
      const bool x_is_ref = x->kind == RangeKind::kRef;
      const ConstraintSet& rs = x_is_ref ? a_ : b_;
      const ConstraintSet& ss = x_is_ref ? b_ : a_;
      const RangePtr& ref = x_is_ref ? x : y;
      const RangePtr& other = x_is_ref ? y : x;
      const uint32_t root = rs.find(ref->ref);
      if (t == int_type()) {
        IntervalSet d = rs.int_domain(root).unite(
            IntervalSet::singleton(other->number));
        return fresh_with(int_binding(std::move(d), {}), t);
      }
      const Binding* b = rs.binding(root);
      if (b == nullptr || b->kind == Binding::Kind::kAny) {
        return fresh_with(
            any_binding(widest(depth_of(rs, root), range_depth(ss, other))),
            t);
      }
      return x_is_ref ? merge_ranges(b->range, other, t)
                      : merge_ranges(other, b->range, t);
    }
    if (x->kind == RangeKind::kInt) {
      if (x->number == y->number) return x;
      IntervalSet d = IntervalSet::singleton(x->number)
                          .unite(IntervalSet::singleton(y->number));
      return fresh_with(int_binding(std::move(d), {}), t);
    }
    if (x->kind == RangeKind::kUnit) return x;
    auto side = [](const RangePtr& r, bool left) -> RangePtr {
      if (r->kind == RangeKind::kBoth) return left ? r->a : r->b;
      if (r->kind == (left ? RangeKind::kInl : RangeKind::kInr)) return r->a;
      return nullptr;
    };
    const bool x_sum = x->kind == RangeKind::kInl ||
                       x->kind == RangeKind::kInr ||
                       x->kind == RangeKind::kBoth;
    if (x_sum) {
      RangePtr xl = side(x, true), xr = side(x, false);
      RangePtr yl = side(y, true), yr = side(y, false);
      RangePtr l = xl && yl ? merge_ranges(xl, yl, t->left) : (xl ? xl : yl);
      RangePtr r = xr && yr ? merge_ranges(xr, yr, t->right) : (xr ? xr : yr);
      if (l && r) return make_range(RangeKind::kBoth, l, r);
      return l ? make_range(RangeKind::kInl, l) : make_range(RangeKind::kInr, r);
    }
    if (x->kind == RangeKind::kPair) {
      RangePtr l = merge_ranges(x->a, y->a, t->left);
      RangePtr r = merge_ranges(x->b, y->b, t->right);
      return make_range(RangeKind::kPair, l, r);
    }
    if (x->kind == RangeKind::kFold) {
      return make_range(RangeKind::kFold,
                        merge_ranges(x->a, y->a, unfold_type(t)));
    }
    throw ContractViolation("union: ill-typed ranges");
  }

  const ConstraintSet& a_;
  const ConstraintSet& b_;
  ConstraintSet out_;
  std::set<uint32_t> removed_;
  std::vector<IntConstraint> removed_content_;
};

ConstraintSet ConstraintSet::union_of(const ConstraintSet& a,
                                      const ConstraintSet& b) {
  return union_of(a, b, nullptr);
}

ConstraintSet ConstraintSet::union_of(const ConstraintSet& a,
                                      const ConstraintSet& b, bool* exact) {
  if (exact != nullptr) *exact = true;
  if (!a.sat()) return b;
  if (!b.sat()) return a;
  StoreMerger merger(a, b);
  return merger.run(exact);
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

template <class Map>
RangePtr rename_range(const RangePtr& r, const Map& m) {
  switch (r->kind) {
    case RangeKind::kUnit:
    case RangeKind::kInt:
      return r;
    case RangeKind::kRef: {
      auto it = m.find(r->ref);
      if (it == m.end()) return r;
      auto out = std::make_shared<Range>(*r);
      out->ref = it->second;
      return out;
    }
    default: {
      RangePtr a = r->a ? rename_range(r->a, m) : nullptr;
      RangePtr b = r->b ? rename_range(r->b, m) : nullptr;
      if (a == r->a && b == r->b) return r;
      auto out = std::make_shared<Range>(*r);
      out->a = std::move(a);
      out->b = std::move(b);
      return out;
    }
  }
}

template <class Map>
BindingPtr rename_binding(const BindingPtr& b, const Map& m) {
  if (b->kind == Binding::Kind::kAlias) {
    auto it = m.find(b->alias);
    if (it == m.end()) return b;
    auto out = std::make_shared<Binding>(*b);
    out->alias = it->second;
    return out;
  }
  if (b->kind == Binding::Kind::kRange) {
    RangePtr r = rename_range(b->range, m);
    if (r == b->range) return b;
    auto out = std::make_shared<Binding>(*b);
    out->range = std::move(r);
    return out;
  }
  return b;
}

template <class Map>
IntConstraint rename_constraint(IntConstraint c, const Map& m) {
  if (auto it = m.find(c.lhs); it != m.end()) c.lhs = it->second;
  if (auto it = m.find(c.rhs); it != m.end()) c.rhs = it->second;
  return c;
}

// Maps ids in [from, from + n) to [to, to + n).
struct ShiftMap {
  uint32_t from, n, to;
  struct It {
    bool end;
    uint32_t second;
    bool operator==(const It& o) const { return end == o.end; }
    const It* operator->() const { return this; }
  };
  It find(uint32_t id) const {
    if (id >= from && id < from + n) return It{false, to + (id - from)};
    return It{true, 0};
  }
  It end() const { return It{true, 0}; }
};

}  // namespace

ConstraintSet ConstraintSet::rename(const std::vector<uint32_t>& us,
                                    uint32_t floor) const {
  if (us.empty()) return *this;
  const uint32_t start = std::max(next_unknown_, floor);
  std::map<uint32_t, uint32_t> m;
  for (size_t i = 0; i < us.size(); ++i) {
    if (!types_.contains(us[i])) {
      throw ContractViolation("rename of an unknown outside U(k)");
    }
    m[us[i]] = start + static_cast<uint32_t>(i);
  }
  auto map_id = [&](uint32_t id) {
    auto it = m.find(id);
    return it == m.end() ? id : it->second;
  };
  ConstraintSet out;
  out.lo_ = lo_;
  out.hi_ = hi_;
  out.failed_ = failed_;
  out.next_unknown_ = start + static_cast<uint32_t>(us.size());
  out.next_constraint_ = next_constraint_;
  types_.for_each([&](uint32_t id, const Type& t) {
    out.types_.set(map_id(id), t);
  });
  store_.for_each([&](uint32_t id, const BindingPtr& b) {
    out.store_.set(map_id(id), rename_binding(b, m));
  });
  constraints_.for_each([&](uint32_t id, const IntConstraint& c) {
    out.constraints_.set(id, rename_constraint(c, m));
  });
  // Aliases must point from the larger id to the smaller one.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<uint32_t, uint32_t>> bad;
    out.store_.for_each([&](uint32_t id, const BindingPtr& b) {
      if (b->kind == Binding::Kind::kAlias && b->alias > id) {
        bad.emplace_back(id, b->alias);
      }
    });
    for (auto [from, to] : bad) {
      const BindingPtr* target = out.store_.find(to);
      if (target == nullptr) {
        out.store_.erase(from);
      } else {
        out.store_.set(from, *target);
      }
      out.set_alias(to, from);
      changed = true;
    }
  }
  return out;
}

ConstraintSet ConstraintSet::rename_since(const ConstraintSet& base,
                                          uint32_t floor) const {
  const uint32_t from = base.next_unknown_;
  if (next_unknown_ <= from) return *this;
  const uint32_t n = next_unknown_ - from;
  const uint32_t to = std::max(next_unknown_, floor);
  ShiftMap m{from, n, to};
  ConstraintSet out = *this;
  out.next_unknown_ = to + n;
  for (uint32_t id = from; id < from + n; ++id) {
    const Type* t = types_.find(id);
    if (t == nullptr) continue;
    out.types_.erase(id);
    out.types_.set(to + (id - from), *t);
  }
  std::vector<std::pair<uint32_t, BindingPtr>> updates;
  std::vector<uint32_t> erased;
  PersistentIdMap<BindingPtr>::diff(
      base.store_, store_,
      [&](uint32_t id, const BindingPtr*, const BindingPtr* mine) {
        if (mine == nullptr) return;
        auto it = m.find(id);
        if (!it.end) erased.push_back(id);
        updates.emplace_back(it.end ? id : it.second,
                             rename_binding(*mine, m));
      });
  for (uint32_t id : erased) out.store_.erase(id);
  for (auto& [id, b] : updates) out.store_.set(id, std::move(b));
  PersistentIdMap<IntConstraint>::diff(
      base.constraints_, constraints_,
      [&](uint32_t id, const IntConstraint*, const IntConstraint* mine) {
        if (mine == nullptr) return;
        out.constraints_.set(id, rename_constraint(*mine, m));
      });
  return out;
}

// ---------------------------------------------------------------------------

std::string ConstraintSet::debug_string() const {
  std::ostringstream os;
  if (failed_) {
    os << "FAILED\n";
    return os.str();
  }
  types_.for_each([&](uint32_t id, const Type& t) {
    os << "?u" << id << " : " << type_to_string(t);
    const Binding* b = binding(id);
    if (b == nullptr) {
      os << (t == int_type() ? " in " + int_universe().to_string() : " = *");
    } else {
      switch (b->kind) {
        case Binding::Kind::kAlias:
          os << " -> ?u" << b->alias;
          break;
        case Binding::Kind::kRange:
          os << " = " << range_to_string(*b->range);
          break;
        case Binding::Kind::kInt:
          os << " in " << b->domain.to_string();
          if (!b->constraints.empty()) {
            os << " [";
            for (size_t i = 0; i < b->constraints.size(); ++i) {
              os << (i ? "," : "") << "c" << b->constraints[i];
            }
            os << "]";
          }
          break;
        case Binding::Kind::kAny:
          os << " = *";
          if (b->depth) os << " depth<=" << *b->depth;
          break;
      }
    }
    os << "\n";
  });
  constraints_.for_each([&](uint32_t id, const IntConstraint& c) {
    os << "c" << id << ": ?u" << c.lhs << " " << to_string(c.op) << " ?u"
       << c.rhs;
    if (c.offset != 0) os << (c.offset > 0 ? " + " : " - ")
                          << (c.offset > 0 ? c.offset : -c.offset);
    os << "\n";
  });
  return os.str();
}

std::pair<ConstraintSet, std::vector<uint32_t>> fresh(
    ConstraintSet k, const std::vector<Type>& ts) {
  std::vector<uint32_t> us = k.fresh(ts);
  return {std::move(k), std::move(us)};
}

ConstraintSet unify(ConstraintSet k, const ValuePtr& a, const ValuePtr& b) {
  k.unify(a, b);
  return k;
}

}  // namespace luck
