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

#ifndef LUCK_CONSTRAINTS_DENOTE_H_
#define LUCK_CONSTRAINTS_DENOTE_H_

#include <cstdint>
#include <vector>

#include "luck/constraints/constraint_set.h"
#include "luck/core/value.h"

namespace luck {

// Brute-force denotation of a store restricted to us: every valuation of
// us that extends to a valuation of the whole store, in ascending order.
// Ranges and domains are expanded exhaustively and integer constraints
// checked by filtering, so this shares no solving code with the store.
// Throws LuckError when more than cap candidates would be visited or a
// domain is unbounded.
std::vector<Valuation> denote_restricted(const ConstraintSet& k,
                                         const std::vector<uint32_t>& us,
                                         uint64_t cap = 100000);

// Every closure-free value of a closed type with at most max_folds folds on
// any path. Throws LuckError past cap values.
std::vector<ValuePtr> values_of_type(Type t, uint32_t max_folds,
                                     const IntervalSet& ints,
                                     uint64_t cap = 100000);

}  // namespace luck

#endif  // LUCK_CONSTRAINTS_DENOTE_H_
