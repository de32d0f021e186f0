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

#include "luck/surface/types.h"

#include <sstream>
#include <utility>

#include "luck/support/error.h"

namespace luck::surface {

namespace gt {

GTypePtr integer() {
  static const GTypePtr t = std::make_shared<GType>(GType{GKind::kInt, "", {}});
  return t;
}
GTypePtr unit() {
  static const GTypePtr t = std::make_shared<GType>(GType{GKind::kUnit, "", {}});
  return t;
}
GTypePtr boolean() {
  static const GTypePtr t =
      std::make_shared<GType>(GType{GKind::kData, kBoolType, {}});
  return t;
}
GTypePtr list(GTypePtr elem) { return data(kListType, {std::move(elem)}); }
GTypePtr tuple(std::vector<GTypePtr> items) {
  if (items.empty()) return unit();
  return std::make_shared<GType>(GType{GKind::kTuple, "", std::move(items)});
}
GTypePtr data(std::string name, std::vector<GTypePtr> args) {
  return std::make_shared<GType>(
      GType{GKind::kData, std::move(name), std::move(args)});
}
GTypePtr arrow(GTypePtr from, GTypePtr to) {
  return std::make_shared<GType>(
      GType{GKind::kArrow, "", {std::move(from), std::move(to)}});
}

}  // namespace gt

namespace {

void print(std::ostream& os, const GType& t, int prec) {
  switch (t.kind) {
    case GKind::kInt:
      os << "Int";
      return;
    case GKind::kUnit:
      os << "()";
      return;
    case GKind::kTuple:
      os << "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ", ";
        print(os, *t.args[i], 0);
      }
      os << ")";
      return;
    case GKind::kData:
      if (t.name == kListType) {
        os << "[";
        print(os, *t.args[0], 0);
        os << "]";
        return;
      }
      if (t.args.empty()) {
        os << t.name;
        return;
      }
      if (prec > 1) os << "(";
      os << t.name;
      for (const auto& a : t.args) {
        os << " ";
        print(os, *a, 2);
      }
      if (prec > 1) os << ")";
      return;
    case GKind::kArrow:
      if (prec > 0) os << "(";
      print(os, *t.args[0], 1);
      os << " -> ";
      print(os, *t.args[1], 0);
      if (prec > 0) os << ")";
      return;
  }
}

}  // namespace

std::string to_string(const GType& t) {
  std::ostringstream os;
  print(os, t, 0);
  return os.str();
}

bool same(const GType& a, const GType& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) {
    return false;
  }
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!same(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

bool is_arrow_free(const GType& t) {
  if (t.kind == GKind::kArrow) return false;
  for (const auto& a : t.args) {
    if (!is_arrow_free(*a)) return false;
  }
  return true;
}

namespace {

DataDecl builtin_bool() {
  DataDecl d;
  d.name = kBoolType;
  d.constructors = {Constructor{"True", {}, {}}, Constructor{"False", {}, {}}};
  return d;
}

DataDecl builtin_list() {
  DataDecl d;
  d.name = kListType;
  d.params = {"a"};
  auto a = std::make_shared<SType>(SType{STypeKind::kVar, "a", {}, {}});
  auto self = std::make_shared<SType>(SType{STypeKind::kList, "", {a}, {}});
  d.constructors = {Constructor{kNil, {}, {}}, Constructor{kCons, {a, self}, {}}};
  return d;
}

}  // namespace

DataTable::DataTable(const std::vector<DataDecl>& declared) {
  decls_.push_back(builtin_bool());
  decls_.push_back(builtin_list());
  for (const auto& d : declared) {
    if (d.name == "Int" || d.name == kBoolType || d.name == kListType) {
      throw SyntaxError("type '" + d.name + "' is built in", d.pos.line,
                        d.pos.column);
    }
    decls_.push_back(d);
  }
  for (size_t i = 0; i < decls_.size(); ++i) {
    const DataDecl& d = decls_[i];
    if (!by_name_.emplace(d.name, i).second) {
      throw SyntaxError("duplicate declaration '" + d.name + "'", d.pos.line,
                        d.pos.column);
    }
    for (size_t j = 0; j < d.constructors.size(); ++j) {
      const Constructor& c = d.constructors[j];
      if (!ctors_.emplace(c.name, std::make_pair(i, j)).second) {
        throw SyntaxError("duplicate constructor '" + c.name + "'", c.pos.line,
                          c.pos.column);
      }
    }
  }
  for (const auto& d : decls_) {
    for (const auto& c : d.constructors) {
      for (const auto& f : c.fields) check_type(*f, d);
    }
  }
}

void DataTable::check_type(const SType& t, const DataDecl& owner) const {
  switch (t.kind) {
    case STypeKind::kVar: {
      bool bound = false;
      for (const auto& p : owner.params) bound = bound || p == t.name;
      if (!bound) {
        throw SyntaxError("type variable '" + t.name + "' is not a parameter of " +
                              owner.name,
                          t.pos.line, t.pos.column);
      }
      return;
    }
    case STypeKind::kCon: {
      if (t.name == "Int") {
        if (!t.args.empty()) {
          throw SyntaxError("Int takes no arguments", t.pos.line, t.pos.column);
        }
        return;
      }
      const DataDecl* d = find(t.name);
      if (d == nullptr) {
        throw SyntaxError("unknown type '" + t.name + "'", t.pos.line,
                          t.pos.column);
      }
      if (d->params.size() != t.args.size()) {
        throw SyntaxError("type '" + t.name + "' expects " +
                              std::to_string(d->params.size()) + " arguments",
                          t.pos.line, t.pos.column);
      }
      break;
    }
    case STypeKind::kArrow:
      throw SyntaxError("constructor fields cannot be functions", t.pos.line,
                        t.pos.column);
    default:
      break;
  }
  for (const auto& a : t.args) check_type(*a, owner);
}

const DataDecl* DataTable::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &decls_[it->second];
}

std::optional<DataTable::CtorRef> DataTable::constructor(
    const std::string& name) const {
  auto it = ctors_.find(name);
  if (it == ctors_.end()) return std::nullopt;
  return CtorRef{&decls_[it->second.first], it->second.second};
}

std::vector<GTypePtr> DataTable::fields(const GType& instance,
                                        size_t ctor) const {
  const DataDecl* d = find(instance.name);
  if (d == nullptr || instance.kind != GKind::kData) {
    throw ContractViolation("fields of a non-datatype " + to_string(instance));
  }
  std::map<std::string, GTypePtr> vars;
  for (size_t i = 0; i < d->params.size(); ++i) {
    vars[d->params[i]] = instance.args.at(i);
  }
  std::vector<GTypePtr> out;
  for (const auto& f : d->constructors.at(ctor).fields) {
    out.push_back(ground(*f, vars));
  }
  return out;
}

GTypePtr DataTable::ground(const SType& t,
                           const std::map<std::string, GTypePtr>& vars) const {
  switch (t.kind) {
    case STypeKind::kVar: {
      auto it = vars.find(t.name);
      if (it == vars.end()) {
        throw TypeError("unbound type variable '" + t.name + "'");
      }
      return it->second;
    }
    case STypeKind::kUnit:
      return gt::unit();
    case STypeKind::kList:
      return gt::list(ground(*t.args[0], vars));
    case STypeKind::kTuple: {
      std::vector<GTypePtr> items;
      for (const auto& a : t.args) items.push_back(ground(*a, vars));
      return gt::tuple(std::move(items));
    }
    case STypeKind::kArrow:
      return gt::arrow(ground(*t.args[0], vars), ground(*t.args[1], vars));
    case STypeKind::kCon: {
      if (t.name == "Int") return gt::integer();
      std::vector<GTypePtr> args;
      for (const auto& a : t.args) args.push_back(ground(*a, vars));
      return gt::data(t.name, std::move(args));
    }
  }
  return nullptr;
}

}  // namespace luck::surface
