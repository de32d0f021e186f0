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

#include "luck/surface/encoding.h"

#include <sstream>

#include "luck/support/error.h"

namespace luck::surface {
namespace {

Type product_of(const std::vector<Type>& items) {
  if (items.empty()) return unit_type();
  Type t = items.back();
  for (size_t i = items.size() - 1; i-- > 0;) t = prod_type(items[i], t);
  return t;
}

Type sum_of(const std::vector<Type>& items) {
  Type t = items.back();
  for (size_t i = items.size() - 1; i-- > 0;) t = sum_type(items[i], t);
  return t;
}

}  // namespace

Type Encoder::encode(const GType& t, std::vector<std::string>& stack,
                     bool* used_top) const {
  switch (t.kind) {
    case GKind::kInt:
      return int_type();
    case GKind::kUnit:
      return unit_type();
    case GKind::kTuple: {
      std::vector<Type> items;
      for (const auto& a : t.args) items.push_back(encode(*a, stack, used_top));
      return product_of(items);
    }
    case GKind::kArrow:
      return arrow_type(encode(*t.args[0], stack, used_top),
                        encode(*t.args[1], stack, used_top));
    case GKind::kData:
      break;
  }
  const std::string key = to_string(t);
  for (size_t i = stack.size(); i-- > 0;) {
    if (stack[i] == key) {
      if (i + 1 == stack.size() && used_top) *used_top = true;
      return type_var(static_cast<uint32_t>(stack.size() - 1 - i));
    }
  }
  if (stack.empty()) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const DataDecl* d = data_.find(t.name);
  if (d == nullptr) throw TypeError("unknown type " + key);
  if (d->constructors.empty()) throw TypeError("type " + key + " has no values");
  auto body_with = [&](bool as_mu) {
    std::vector<Type> payloads;
    bool used = false;
    if (as_mu) stack.push_back(key);
    for (size_t c = 0; c < d->constructors.size(); ++c) {
      std::vector<Type> fields;
      for (const auto& f : data_.fields(t, c)) {
        // Only a reference to this very instance binds the new variable;
        // references further out are looked up through the stack.
        bool inner_used = false;
        fields.push_back(encode(*f, stack, as_mu ? &inner_used : used_top));
        used = used || inner_used;
      }
      payloads.push_back(product_of(fields));
    }
    if (as_mu) stack.pop_back();
    return std::make_pair(sum_of(payloads), used);
  };
  auto [body, recursive] = body_with(true);
  Type out;
  if (recursive) {
    out = mu_type(body);
  } else {
    out = body_with(false).first;
  }
  if (stack.empty()) {
    std::lock_guard<std::mutex> lock(mu_);
    cache_[key] = out;
  }
  return out;
}

Type Encoder::core(const GType& t) const {
  std::vector<std::string> stack;
  return encode(t, stack, nullptr);
}

const DataLayout& Encoder::layout(const GType& instance) const {
  if (instance.kind != GKind::kData) {
    throw ContractViolation("layout of a non-datatype " + to_string(instance));
  }
  const std::string key = to_string(instance);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = layouts_.find(key);
    if (it != layouts_.end()) return it->second;
  }
  DataLayout l;
  l.type = core(instance);
  l.recursive = l.type->kind == TypeKind::kMu;
  l.spine = l.recursive ? unfold_type(l.type) : l.type;
  const DataDecl* d = data_.find(instance.name);
  const size_t k = d->constructors.size();
  Type cur = l.spine;
  for (size_t c = 0; c < k; ++c) {
    l.fields.push_back(data_.fields(instance, c));
    if (c + 1 == k) {
      l.payloads.push_back(cur);
    } else {
      l.payloads.push_back(cur->left);
      cur = cur->right;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return layouts_.emplace(key, std::move(l)).first->second;
}

ExprPtr Encoder::construct(const GType& instance, size_t ctor,
                           ExprPtr payload) const {
  const DataLayout& l = layout(instance);
  const size_t k = l.payloads.size();
  std::vector<Type> levels{l.spine};
  for (size_t c = 0; c + 1 < k; ++c) levels.push_back(levels.back()->right);
  ExprPtr e = std::move(payload);
  if (ctor + 1 < k) e = build::inl(levels[ctor], e);
  for (size_t c = std::min(ctor, k - 1); c-- > 0;) e = build::inr(levels[c], e);
  return l.recursive ? build::fold(l.type, e) : e;
}

ValuePtr Encoder::construct_value(const GType& instance, size_t ctor,
                                  ValuePtr payload) const {
  const DataLayout& l = layout(instance);
  const size_t k = l.payloads.size();
  std::vector<Type> levels{l.spine};
  for (size_t c = 0; c + 1 < k; ++c) levels.push_back(levels.back()->right);
  ValuePtr v = std::move(payload);
  if (ctor + 1 < k) v = val::inl(levels[ctor], v);
  for (size_t c = std::min(ctor, k - 1); c-- > 0;) v = val::inr(levels[c], v);
  return l.recursive ? val::fold(l.type, v) : v;
}

std::pair<size_t, ValuePtr> Encoder::destruct(const GType& instance,
                                              const ValuePtr& v) const {
  const DataLayout& l = layout(instance);
  ValuePtr cur = v;
  if (l.recursive) {
    if (cur->kind != ValueKind::kFold) {
      throw ContractViolation("expected a fold: " + value_to_string(*v));
    }
    cur = cur->a;
  }
  const size_t k = l.payloads.size();
  for (size_t c = 0; c + 1 < k; ++c) {
    if (cur->kind == ValueKind::kInl) return {c, cur->a};
    if (cur->kind != ValueKind::kInr) {
      throw ContractViolation("expected an injection: " + value_to_string(*v));
    }
    cur = cur->a;
  }
  return {k - 1, cur};
}

namespace {

std::vector<ValuePtr> split_fields(const ValuePtr& payload, size_t n) {
  std::vector<ValuePtr> out;
  if (n == 0) return out;
  ValuePtr cur = payload;
  for (size_t i = 0; i + 1 < n; ++i) {
    if (cur->kind != ValueKind::kPair) {
      throw ContractViolation("expected a pair: " + value_to_string(*payload));
    }
    out.push_back(cur->a);
    cur = cur->b;
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string Encoder::render(const Value& v, const GType& t) const {
  std::ostringstream os;
  auto rec = [&](auto&& self, const ValuePtr& x, const GType& ty,
                 bool atomic) -> void {
    if (x->kind == ValueKind::kUnknown) {
      os << "?" << x->unknown;
      return;
    }
    switch (ty.kind) {
      case GKind::kInt:
        if (x->number < 0 && atomic) {
          os << "(" << x->number << ")";
        } else {
          os << x->number;
        }
        return;
      case GKind::kUnit:
        os << "()";
        return;
      case GKind::kArrow:
        os << "<function>";
        return;
      case GKind::kTuple: {
        auto parts = split_fields(x, ty.args.size());
        os << "(";
        for (size_t i = 0; i < parts.size(); ++i) {
          if (i) os << ", ";
          self(self, parts[i], *ty.args[i], false);
        }
        os << ")";
        return;
      }
      case GKind::kData:
        break;
    }
    if (ty.name == kListType) {
      os << "[";
      ValuePtr cur = x;
      bool first = true;
      for (;;) {
        auto [c, payload] = destruct(ty, cur);
        if (c == 0) break;
        auto parts = split_fields(payload, 2);
        if (!first) os << ", ";
        first = false;
        self(self, parts[0], *ty.args[0], false);
        cur = parts[1];
        if (cur->kind == ValueKind::kUnknown) {
          os << " | ?" << cur->unknown;
          break;
        }
      }
      os << "]";
      return;
    }
    auto [c, payload] = destruct(ty, x);
    const DataLayout& l = layout(ty);
    const auto& fields = l.fields[c];
    const std::string& name = data_.find(ty.name)->constructors[c].name;
    if (fields.empty()) {
      os << name;
      return;
    }
    if (atomic) os << "(";
    os << name;
    auto parts = split_fields(payload, fields.size());
    for (size_t i = 0; i < parts.size(); ++i) {
      os << " ";
      self(self, parts[i], *fields[i], true);
    }
    if (atomic) os << ")";
  };
  ValuePtr holder(std::shared_ptr<const Value>(), &v);
  rec(rec, holder, t, false);
  return os.str();
}

}  // namespace luck::surface
