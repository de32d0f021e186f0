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

#ifndef LUCK_EVAL_PREDICATE_H_
#define LUCK_EVAL_PREDICATE_H_

#include <cstdint>

#include "luck/core/expr.h"
#include "luck/core/value.h"

namespace luck {

inline constexpr uint64_t kDefaultFuel = 1'000'000;

// Big-step evaluation of a closed, unknown-free expression, with
// instantiation, sampling and sequencing annotations transparent.
// Throws FuelExhausted when the step budget runs out and RuntimeError when
// evaluation gets stuck (non-positive weight, failing match, ...).
ValuePtr pred_eval(const Expr& e, uint64_t fuel = kDefaultFuel);
ValuePtr pred_eval(const Expr& e, const EnvPtr& env,
                   uint64_t fuel = kDefaultFuel);

}  // namespace luck

#endif  // LUCK_EVAL_PREDICATE_H_
