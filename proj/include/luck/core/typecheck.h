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

#ifndef LUCK_CORE_TYPECHECK_H_
#define LUCK_CORE_TYPECHECK_H_

#include <cstdint>
#include <map>
#include <vector>

#include "luck/core/expr.h"
#include "luck/core/type.h"

namespace luck {

struct TypingEnv {
  std::vector<Type> vars;  // de Bruijn: vars.back() is index 0
  std::map<uint32_t, Type> unknowns;
};

// Checks e and returns its type. Throws TypeError.
Type typecheck(const TypingEnv& env, const Expr& e);

// Checks e and returns a copy in which every node carries its type.
ExprPtr annotate(const TypingEnv& env, const ExprPtr& e);

}  // namespace luck

#endif  // LUCK_CORE_TYPECHECK_H_
