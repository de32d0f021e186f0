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

#ifndef LUCK_CORE_TYPE_H_
#define LUCK_CORE_TYPE_H_

#include <atomic>
#include <cstdint>
#include <string>

namespace luck {

enum class TypeKind : uint8_t { kVar, kUnit, kInt, kSum, kProd, kMu, kArrow };

struct TypeNode;
// Types are hash-consed: structurally equal types (mu-binders in de Bruijn
// form) are the same pointer, so equality is pointer equality.
using Type = const TypeNode*;

struct TypeNode {
  TypeKind kind;
  uint32_t var = 0;  // de Bruijn index for kVar
  Type left = nullptr;
  Type right = nullptr;  // kMu keeps its body in left
  bool arrow_free = true;
  bool closed = true;      // no free type variables
  bool recursive = false;  // contains a mu
  uint32_t min_folds = 0;  // least fold depth of any value
  mutable std::atomic<const TypeNode*> unfolded{nullptr};  // cache
};

Type unit_type();
Type int_type();
Type type_var(uint32_t index);
Type sum_type(Type left, Type right);
Type prod_type(Type left, Type right);
Type mu_type(Type body);
Type arrow_type(Type from, Type to);

Type bool_type();  // 1 + 1, True = inl ()
Type nat_type();   // mu X. 1 + X

// body[mu/0] for a mu type.
Type unfold_type(Type mu);

bool is_arrow_free(Type t);

// Fully parenthesized rendering, e.g. "(mu (1 + X0))".
std::string type_to_string(Type t);

}  // namespace luck

#endif  // LUCK_CORE_TYPE_H_
