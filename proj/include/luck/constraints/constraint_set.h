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

#ifndef LUCK_CONSTRAINTS_CONSTRAINT_SET_H_
#define LUCK_CONSTRAINTS_CONSTRAINT_SET_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "luck/constraints/interval_set.h"
#include "luck/core/expr.h"
#include "luck/core/type.h"
#include "luck/core/value.h"
#include "luck/support/persistent_map.h"

namespace luck {

enum class RangeKind : uint8_t { kUnit, kInt, kRef, kPair, kFold, kInl, kInr, kBoth };

struct Range;
using RangePtr = std::shared_ptr<const Range>;

// r ::= () | n | u | (r, r) | fold r | inl r | inr r | {inl r, inr r}
struct Range {
  RangeKind kind;
  uint32_t ref = 0;
  int64_t number = 0;
  RangePtr a, b;  // kBoth: a is the inl side, b the inr side
};

// lhs op rhs + offset
struct IntConstraint {
  uint32_t lhs;
  CmpOp op;
  uint32_t rhs;
  int64_t offset;
  bool operator==(const IntConstraint&) const = default;
};

struct Binding {
  enum class Kind : uint8_t { kAlias, kRange, kInt, kAny };
  Kind kind = Kind::kAny;
  uint32_t alias = 0;
  RangePtr range;
  IntervalSet domain;
  std::vector<uint32_t> constraints;  // ids, ascending
  std::optional<uint32_t> depth;      // kAny: most folds on any path
};
using BindingPtr = std::shared_ptr<const Binding>;

// Either a literal or an unknown.
struct IntTerm {
  bool is_unknown = false;
  uint32_t unknown = 0;
  int64_t value = 0;
  static IntTerm lit(int64_t v) { return IntTerm{false, 0, v}; }
  static IntTerm var(uint32_t u) { return IntTerm{true, u, 0}; }
};

// A set of valuations over typed unknowns: a typing map, an orthogonal map
// from unknowns to ranges, and integer interval domains tied together by
// binary constraints kept arc consistent.
//
// Values of this class are persistent snapshots: copying is O(1) and the
// mutating members below only affect the copy they are called on.
class ConstraintSet {
 public:
  static constexpr int64_t kIntMin = -(int64_t{1} << 62);
  static constexpr int64_t kIntMax = (int64_t{1} << 62) - 1;
  static constexpr uint64_t kDefaultEnumerationCap = 100000;

  ConstraintSet() = default;
  ConstraintSet(int64_t int_lo, int64_t int_hi);

  // The default domain of every integer unknown.
  IntervalSet int_universe() const { return IntervalSet::range(lo_, hi_); }

  bool sat() const { return !failed_; }
  void set_failed() { failed_ = true; }

  uint32_t fresh(Type t);
  std::vector<uint32_t> fresh(const std::vector<Type>& ts);

  // Restricts the store to valuations where a and b agree.
  void unify(const ValuePtr& a, const ValuePtr& b);
  // Restricts the store to valuations where a op b + offset holds.
  void add_comparison(IntTerm a, CmpOp op, IntTerm b, int64_t offset = 0);
  // Intersects u's integer domain.
  void restrict_int(uint32_t u, const IntervalSet& allowed);
  // Bounds the number of folds on any path of u's value.
  void constrain_depth(uint32_t u, uint32_t depth);
  // Re-establishes arc consistency from seed's constraints.
  void propagate(uint32_t seed);

  // The value u has in every valuation, if there is exactly one.
  ValuePtr index(uint32_t u) const;
  std::optional<int64_t> int_value(uint32_t u) const;
  // u's outermost known structure with unknowns at the leaves: the same
  // set of values, one constructor deep. nullptr when u is undetermined
  // at the top (an unbound sum, a two-sided range, a non-singleton Int).
  ValuePtr expose(uint32_t u) const;
  // Current domain of an integer unknown.
  IntervalSet int_domain(uint32_t u) const;

  // One store per value of u, each pinning u; ordered structurally.
  std::vector<ConstraintSet> sample(
      uint32_t u, uint64_t cap = kDefaultEnumerationCap) const;
  // Number of values of u when they can be counted without enumerating
  // (an integer unknown with no attached constraints), else nullopt.
  std::optional<uint64_t> cheap_sample_size(uint32_t u) const;
  // The m-th element of sample(u) under the condition above.
  ConstraintSet cheap_sample_at(uint32_t u, uint64_t m) const;

  static ConstraintSet union_of(const ConstraintSet& a,
                                const ConstraintSet& b);
  // As above; *exact is set to whether the result denotes exactly the
  // union rather than a superset of it.
  static ConstraintSet union_of(const ConstraintSet& a, const ConstraintSet& b,
                                bool* exact);
  // Renames us to fresh unknowns numbered from max(next_unknown(), floor).
  ConstraintSet rename(const std::vector<uint32_t>& us,
                       uint32_t floor = 0) const;
  // Renames the unknowns created since base, touching only entries that
  // differ from base. This store must descend from base.
  ConstraintSet rename_since(const ConstraintSet& base, uint32_t floor) const;

  // Enumerates the values of u. emit may return false to stop early.
  using Emit = std::function<bool(const ConstraintSet&, const ValuePtr&)>;
  void enumerate(uint32_t u, const Emit& emit,
                 uint64_t cap = kDefaultEnumerationCap) const;

  Type type_of(uint32_t u) const;
  bool has_unknown(uint32_t u) const { return types_.contains(u); }
  uint32_t next_unknown() const { return next_unknown_; }
  std::vector<uint32_t> unknowns() const;
  uint32_t find(uint32_t u) const;
  const Binding* binding(uint32_t u) const;
  const IntConstraint* constraint(uint32_t id) const {
    return constraints_.find(id);
  }
  std::vector<IntConstraint> constraints() const;

  std::string debug_string() const;

 private:
  friend class StoreMerger;
  friend class StoreEnumerator;

  static RangePtr ref_range(uint32_t u);
  void set_binding(uint32_t u, Binding b);
  void set_alias(uint32_t from, uint32_t to);

  RangePtr unify_ranges(const RangePtr& a, const RangePtr& b);
  bool unify_refs(uint32_t u, uint32_t v);
  bool unify_ref_with(uint32_t u, const RangePtr& s);
  bool occurs(uint32_t root, const RangePtr& r) const;
  RangePtr apply_depth(const RangePtr& r, uint32_t depth);
  bool limit_depth(uint32_t u, uint32_t depth);

  bool restrict_domain(uint32_t root, const IntervalSet& d);
  bool run_propagation(std::vector<uint32_t> queue);
  bool compare_with_literal(uint32_t u, CmpOp op, int64_t c);

  ValuePtr determined(const RangePtr& r, Type t) const;
  ValuePtr determined_type(Type t) const;
  ValuePtr range_value(const RangePtr& r, Type t) const;

  PersistentIdMap<Type> types_;
  PersistentIdMap<BindingPtr> store_;
  PersistentIdMap<IntConstraint> constraints_;
  uint32_t next_unknown_ = 0;
  uint32_t next_constraint_ = 0;
  int64_t lo_ = kIntMin;
  int64_t hi_ = kIntMax;
  bool failed_ = false;
};

// Functional forms of the interface.
std::pair<ConstraintSet, std::vector<uint32_t>> fresh(
    ConstraintSet k, const std::vector<Type>& ts);
ConstraintSet unify(ConstraintSet k, const ValuePtr& a, const ValuePtr& b);
inline bool sat(const ConstraintSet& k) { return k.sat(); }

std::string range_to_string(const Range& r);

}  // namespace luck

#endif  // LUCK_CONSTRAINTS_CONSTRAINT_SET_H_
