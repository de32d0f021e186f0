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

#include "luck/core/type.h"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "luck/support/error.h"

namespace luck {
namespace {

constexpr uint32_t kInfiniteFolds = std::numeric_limits<uint32_t>::max() / 4;

// Largest free de Bruijn index + 1 (0 when closed).
uint32_t free_extent(const TypeNode& n);
uint32_t min_folds(Type t, std::vector<uint32_t>& env);

class TypeTable {
 public:
  static TypeTable& get() {
    static TypeTable* table = new TypeTable;
    return *table;
  }

  Type intern(TypeKind kind, uint32_t var, Type left, Type right) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(kind, var, left, right);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    auto node = std::make_unique<TypeNode>();
    node->kind = kind;
    node->var = var;
    node->left = left;
    node->right = right;
    switch (kind) {
      case TypeKind::kVar:
        node->closed = false;
        break;
      case TypeKind::kUnit:
      case TypeKind::kInt:
        break;
      case TypeKind::kSum:
      case TypeKind::kProd:
        node->arrow_free = left->arrow_free && right->arrow_free;
        break;
      case TypeKind::kArrow:
        node->arrow_free = false;
        break;
      case TypeKind::kMu:
        node->arrow_free = left->arrow_free;
        break;
    }
    node->recursive = kind == TypeKind::kMu ||
                      (left != nullptr && left->recursive) ||
                      (right != nullptr && right->recursive);
    node->closed = free_extent(*node) == 0;
    if (node->closed) {
      std::vector<uint32_t> env;
      node->min_folds = min_folds(node.get(), env);
    }
    Type result = node.get();
    nodes_.push_back(std::move(node));
    table_.emplace(key, result);
    return result;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<TypeKind, uint32_t, Type, Type>, Type> table_;
  std::vector<std::unique_ptr<TypeNode>> nodes_;
};

uint32_t free_extent(const TypeNode& n) {
  switch (n.kind) {
    case TypeKind::kVar:
      return n.var + 1;
    case TypeKind::kUnit:
    case TypeKind::kInt:
      return 0;
    case TypeKind::kSum:
    case TypeKind::kProd:
    case TypeKind::kArrow:
      return std::max(free_extent(*n.left), free_extent(*n.right));
    case TypeKind::kMu: {
      uint32_t inner = free_extent(*n.left);
      return inner == 0 ? 0 : inner - 1;
    }
  }
  return 0;
}

// Shift free variables >= cutoff by delta.
Type shift(Type t, int delta, uint32_t cutoff) {
  if (t->closed) return t;
  switch (t->kind) {
    case TypeKind::kVar:
      return t->var >= cutoff ? type_var(t->var + delta) : t;
    case TypeKind::kSum:
      return sum_type(shift(t->left, delta, cutoff),
                      shift(t->right, delta, cutoff));
    case TypeKind::kProd:
      return prod_type(shift(t->left, delta, cutoff),
                       shift(t->right, delta, cutoff));
    case TypeKind::kArrow:
      return arrow_type(shift(t->left, delta, cutoff),
                        shift(t->right, delta, cutoff));
    case TypeKind::kMu:
      return mu_type(shift(t->left, delta, cutoff + 1));
    default:
      return t;
  }
}

// t[replacement/index], lowering the indices above.
Type subst(Type t, uint32_t index, Type replacement) {
  if (t->closed) return t;
  switch (t->kind) {
    case TypeKind::kVar:
      if (t->var == index) return shift(replacement, index, 0);
      if (t->var > index) return type_var(t->var - 1);
      return t;
    case TypeKind::kSum:
      return sum_type(subst(t->left, index, replacement),
                      subst(t->right, index, replacement));
    case TypeKind::kProd:
      return prod_type(subst(t->left, index, replacement),
                       subst(t->right, index, replacement));
    case TypeKind::kArrow:
      return arrow_type(subst(t->left, index, replacement),
                        subst(t->right, index, replacement));
    case TypeKind::kMu:
      return mu_type(subst(t->left, index + 1, replacement));
    default:
      return t;
  }
}

// Least fold depth of a value of t, given the cost of each bound var.
uint32_t min_folds(Type t, std::vector<uint32_t>& env) {
  switch (t->kind) {
    case TypeKind::kVar:
      return t->var < env.size() ? env[env.size() - 1 - t->var]
                                 : kInfiniteFolds;
    case TypeKind::kUnit:
    case TypeKind::kInt:
    case TypeKind::kArrow:
      return 0;
    case TypeKind::kSum:
      return std::min(min_folds(t->left, env), min_folds(t->right, env));
    case TypeKind::kProd:
      return std::max(min_folds(t->left, env), min_folds(t->right, env));
    case TypeKind::kMu: {
      env.push_back(kInfiniteFolds);
      uint32_t body = min_folds(t->left, env);
      env.pop_back();
      return std::min(kInfiniteFolds, body + 1);
    }
  }
  return 0;
}

}  // namespace

Type unit_type() {
  static Type t = TypeTable::get().intern(TypeKind::kUnit, 0, nullptr, nullptr);
  return t;
}

Type int_type() {
  static Type t = TypeTable::get().intern(TypeKind::kInt, 0, nullptr, nullptr);
  return t;
}

Type type_var(uint32_t index) {
  return TypeTable::get().intern(TypeKind::kVar, index, nullptr, nullptr);
}

Type sum_type(Type left, Type right) {
  return TypeTable::get().intern(TypeKind::kSum, 0, left, right);
}

Type prod_type(Type left, Type right) {
  return TypeTable::get().intern(TypeKind::kProd, 0, left, right);
}

Type mu_type(Type body) {
  return TypeTable::get().intern(TypeKind::kMu, 0, body, nullptr);
}

Type arrow_type(Type from, Type to) {
  return TypeTable::get().intern(TypeKind::kArrow, 0, from, to);
}

Type bool_type() {
  static Type t = sum_type(unit_type(), unit_type());
  return t;
}

Type nat_type() {
  static Type t = mu_type(sum_type(unit_type(), type_var(0)));
  return t;
}

Type unfold_type(Type mu) {
  if (mu->kind != TypeKind::kMu) {
    throw ContractViolation("unfold_type of a non-recursive type");
  }
  Type cached = mu->unfolded.load(std::memory_order_acquire);
  if (cached != nullptr) return cached;
  Type result = subst(mu->left, 0, mu);
  mu->unfolded.store(result, std::memory_order_release);
  return result;
}

bool is_arrow_free(Type t) { return t->arrow_free; }

std::string type_to_string(Type t) {
  switch (t->kind) {
    case TypeKind::kVar:
      return "X" + std::to_string(t->var);
    case TypeKind::kUnit:
      return "1";
    case TypeKind::kInt:
      return "Int";
    case TypeKind::kSum:
      return "(" + type_to_string(t->left) + " + " + type_to_string(t->right) +
             ")";
    case TypeKind::kProd:
      return "(" + type_to_string(t->left) + " * " + type_to_string(t->right) +
             ")";
    case TypeKind::kArrow:
      return "(" + type_to_string(t->left) + " -> " +
             type_to_string(t->right) + ")";
    case TypeKind::kMu:
      return "(mu " + type_to_string(t->left) + ")";
  }
  return "?";
}

}  // namespace luck
