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

#include "luck/constraints/denote.h"

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "luck/support/error.h"

namespace luck {
namespace {

class TypeValues {
 public:
  TypeValues(const IntervalSet& ints, uint64_t cap) : ints_(ints), cap_(cap) {}

  const std::vector<ValuePtr>& of(Type t, std::optional<uint32_t> folds) {
    auto key = std::make_pair(t, folds ? int64_t{*folds} : int64_t{-1});
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<ValuePtr> out;
    switch (t->kind) {
      case TypeKind::kUnit:
        out.push_back(val::unit());
        break;
      case TypeKind::kInt:
        if (ints_.size() > cap_) throw LuckError("integer domain too large");
        for (uint64_t i = 0; i < ints_.size(); ++i) {
          out.push_back(val::integer(ints_.nth(i)));
        }
        break;
      case TypeKind::kProd: {
        const auto left = of(t->left, folds);
        const auto& right = of(t->right, folds);
        for (const auto& a : left) {
          for (const auto& b : right) {
            out.push_back(val::pair(a, b));
            check(out.size());
          }
        }
        break;
      }
      case TypeKind::kSum: {
        const auto left = of(t->left, folds);
        for (const auto& a : left) out.push_back(val::inl(t, a));
        const auto& right = of(t->right, folds);
        for (const auto& b : right) {
          out.push_back(val::inr(t, b));
          check(out.size());
        }
        break;
      }
      case TypeKind::kMu: {
        if (!folds) throw LuckError("unbounded recursive domain");
        if (*folds == 0) break;
        for (const auto& v : of(unfold_type(t), *folds - 1)) {
          out.push_back(val::fold(t, v));
        }
        break;
      }
      case TypeKind::kArrow:
      case TypeKind::kVar:
        throw LuckError("no finite domain for type " + type_to_string(t));
    }
    check(out.size());
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  void check(uint64_t n) const {
    if (n > cap_) throw LuckError("restricted denotation exceeds the cap");
  }

  IntervalSet ints_;
  uint64_t cap_;
  std::map<std::pair<Type, int64_t>, std::vector<ValuePtr>> memo_;
};

class Denoter {
 public:
  Denoter(const ConstraintSet& k, uint64_t cap)
      : k_(k), cap_(cap), types_(k.int_universe(), cap) {}

  using Next = std::function<void(const ValuePtr&)>;

  void ref(uint32_t u, const Next& next) {
    const uint32_t r = k_.find(u);
    auto it = assign_.find(r);
    if (it != assign_.end()) {
      next(it->second);
      return;
    }
    auto with = [&](const ValuePtr& v) {
      assign_[r] = v;
      next(v);
      assign_.erase(r);
    };
    const Binding* b = k_.binding(r);
    if (b == nullptr || b->kind == Binding::Kind::kAny) {
      std::optional<uint32_t> depth;
      if (b != nullptr) depth = b->depth;
      for (const auto& v : types_.of(k_.type_of(r), depth)) with(v);
      return;
    }
    if (b->kind == Binding::Kind::kInt) {
      if (b->domain.size() > cap_) throw LuckError("integer domain too large");
      for (uint64_t i = 0; i < b->domain.size(); ++i) {
        with(val::integer(b->domain.nth(i)));
      }
      return;
    }
    if (b->kind == Binding::Kind::kRange) {
      range(b->range, k_.type_of(r), with);
      return;
    }
    throw ContractViolation("alias at a representative");
  }

  void range(const RangePtr& r, Type t, const Next& next) {
    switch (r->kind) {
      case RangeKind::kUnit:
        next(val::unit());
        return;
      case RangeKind::kInt:
        next(val::integer(r->number));
        return;
      case RangeKind::kRef:
        ref(r->ref, next);
        return;
      case RangeKind::kPair:
        range(r->a, t->left, [&](const ValuePtr& a) {
          range(r->b, t->right,
                [&](const ValuePtr& b) { next(val::pair(a, b)); });
        });
        return;
      case RangeKind::kFold:
        range(r->a, unfold_type(t),
              [&](const ValuePtr& v) { next(val::fold(t, v)); });
        return;
      case RangeKind::kInl:
        range(r->a, t->left, [&](const ValuePtr& v) { next(val::inl(t, v)); });
        return;
      case RangeKind::kInr:
        range(r->a, t->right,
              [&](const ValuePtr& v) { next(val::inr(t, v)); });
        return;
      case RangeKind::kBoth:
        range(r->a, t->left, [&](const ValuePtr& v) { next(val::inl(t, v)); });
        range(r->b, t->right,
              [&](const ValuePtr& v) { next(val::inr(t, v)); });
        return;
    }
  }

  bool constraints_hold() const {
    for (const IntConstraint& c : k_.constraints()) {
      auto l = assign_.find(k_.find(c.lhs));
      auto r = assign_.find(k_.find(c.rhs));
      if (l == assign_.end() || r == assign_.end()) continue;
      if (!compare_ints(c.op, l->second->number, r->second->number + c.offset)) {
        return false;
      }
    }
    return true;
  }

  void tick() {
    if (++visited_ > cap_) {
      throw LuckError("restricted denotation exceeds the cap");
    }
  }

 private:
  const ConstraintSet& k_;
  uint64_t cap_;
  TypeValues types_;
  std::map<uint32_t, ValuePtr> assign_;
  uint64_t visited_ = 0;
};

void collect_refs(const ConstraintSet& k, const RangePtr& r,
                  std::set<uint32_t>& seen, std::vector<uint32_t>& work) {
  if (r == nullptr) return;
  if (r->kind == RangeKind::kRef) {
    const uint32_t root = k.find(r->ref);
    if (seen.insert(root).second) work.push_back(root);
    return;
  }
  collect_refs(k, r->a, seen, work);
  collect_refs(k, r->b, seen, work);
}

}  // namespace

std::vector<ValuePtr> values_of_type(Type t, uint32_t max_folds,
                                     const IntervalSet& ints, uint64_t cap) {
  TypeValues tv(ints, cap);
  return tv.of(t, max_folds);
}

std::vector<Valuation> denote_restricted(const ConstraintSet& k,
                                         const std::vector<uint32_t>& us,
                                         uint64_t cap) {
  if (!k.sat()) return {};
  // Integer unknowns tied to the reachable ones by constraints are
  // enumerated too, existentially.
  std::set<uint32_t> seen;
  std::vector<uint32_t> work;
  for (uint32_t u : us) {
    const uint32_t root = k.find(u);
    if (seen.insert(root).second) work.push_back(root);
  }
  const auto all = k.constraints();
  std::vector<uint32_t> extra;
  for (size_t i = 0; i < work.size(); ++i) {
    const uint32_t u = work[i];
    const Binding* b = k.binding(u);
    if (b != nullptr && b->kind == Binding::Kind::kRange) {
      collect_refs(k, b->range, seen, work);
    }
    for (const IntConstraint& c : all) {
      for (uint32_t side : {c.lhs, c.rhs}) {
        const uint32_t other = k.find(side);
        if ((k.find(c.lhs) == u || k.find(c.rhs) == u) &&
            seen.insert(other).second) {
          work.push_back(other);
          extra.push_back(other);
        }
      }
    }
  }

  Denoter d(k, cap);
  std::set<Valuation, ValuationLess> out;
  Valuation current;
  std::function<void(size_t)> extras = [&](size_t i) {
    if (i == extra.size()) {
      d.tick();
      if (d.constraints_hold()) out.insert(current);
      return;
    }
    d.ref(extra[i], [&](const ValuePtr&) { extras(i + 1); });
  };
  std::function<void(size_t)> step = [&](size_t i) {
    if (i == us.size()) {
      extras(0);
      return;
    }
    d.ref(us[i], [&](const ValuePtr& v) {
      current[us[i]] = v;
      step(i + 1);
      current.erase(us[i]);
    });
  };
  step(0);
  return {out.begin(), out.end()};
}

}  // namespace luck
