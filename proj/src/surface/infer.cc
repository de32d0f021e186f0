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

#include "luck/surface/infer.h"

#include <set>
#include <utility>

#include "luck/support/error.h"

namespace luck::surface {
namespace {

// Type terms with union-find variables.
class Terms {
 public:
  enum Kind : uint8_t { kVar, kInt, kUnit, kTuple, kData, kArrow };

  int var() { return add(kVar, "", {}); }
  int integer() { return add(kInt, "", {}); }
  int unit() { return add(kUnit, "", {}); }
  int boolean() { return add(kData, kBoolType, {}); }
  int list(int elem) { return add(kData, kListType, {elem}); }
  int arrow(int a, int b) { return add(kArrow, "", {a, b}); }
  int tuple(std::vector<int> items) {
    if (items.empty()) return unit();
    return add(kTuple, "", std::move(items));
  }
  int data(std::string name, std::vector<int> args) {
    return add(kData, std::move(name), std::move(args));
  }

  int find(int t) {
    while (nodes_[t].parent != t) {
      nodes_[t].parent = nodes_[nodes_[t].parent].parent;
      t = nodes_[t].parent;
    }
    return t;
  }

  void unify(int a, int b, Pos pos, const char* what) {
    if (!try_unify(a, b)) {
      throw TypeError(std::to_string(pos.line) + ":" +
                      std::to_string(pos.column) + ": type mismatch in " +
                      what + ": " + show(a) + " vs " + show(b));
    }
  }

  int from_ground(const GType& g) {
    std::vector<int> args;
    for (const auto& a : g.args) args.push_back(from_ground(*a));
    switch (g.kind) {
      case GKind::kInt: return integer();
      case GKind::kUnit: return unit();
      case GKind::kTuple: return tuple(std::move(args));
      case GKind::kData: return data(g.name, std::move(args));
      case GKind::kArrow: return arrow(args[0], args[1]);
    }
    return unit();
  }

  // Open variables become () when default_open, else nullptr.
  GTypePtr ground(int t, bool default_open) {
    t = find(t);
    const Node& n = nodes_[t];
    std::vector<GTypePtr> args;
    for (int a : n.args) {
      GTypePtr g = ground(a, default_open);
      if (g == nullptr) return nullptr;
      args.push_back(std::move(g));
    }
    switch (n.kind) {
      case kVar: return default_open ? gt::unit() : nullptr;
      case kInt: return gt::integer();
      case kUnit: return gt::unit();
      case kTuple: return gt::tuple(std::move(args));
      case kData: return gt::data(n.name, std::move(args));
      case kArrow: return gt::arrow(args[0], args[1]);
    }
    return nullptr;
  }

  std::string show(int t) {
    t = find(t);
    const Node& n = nodes_[t];
    switch (n.kind) {
      case kVar: return "t" + std::to_string(t);
      case kInt: return "Int";
      case kUnit: return "()";
      case kArrow: return "(" + show(n.args[0]) + " -> " + show(n.args[1]) + ")";
      case kTuple: {
        std::string s = "(";
        for (size_t i = 0; i < n.args.size(); ++i) {
          if (i) s += ", ";
          s += show(n.args[i]);
        }
        return s + ")";
      }
      case kData: {
        if (n.name == kListType) return "[" + show(n.args[0]) + "]";
        std::string s = n.name;
        for (int a : n.args) s += " " + show(a);
        return n.args.empty() ? s : "(" + s + ")";
      }
    }
    return "?";
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<int> args;
    int parent;
  };

  int add(Kind kind, std::string name, std::vector<int> args) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{kind, std::move(name), std::move(args), id});
    return id;
  }

  bool occurs(int v, int t) {
    t = find(t);
    if (t == v) return true;
    for (int a : nodes_[t].args) {
      if (occurs(v, a)) return true;
    }
    return false;
  }

  bool try_unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    if (nodes_[a].kind == kVar) {
      if (occurs(a, b)) return false;
      nodes_[a].parent = b;
      return true;
    }
    if (nodes_[b].kind == kVar) return try_unify(b, a);
    const Node& x = nodes_[a];
    const Node& y = nodes_[b];
    if (x.kind != y.kind || x.name != y.name ||
        x.args.size() != y.args.size()) {
      return false;
    }
    const std::vector<int> xa = x.args, ya = y.args;
    for (size_t i = 0; i < xa.size(); ++i) {
      if (!try_unify(xa[i], ya[i])) return false;
    }
    return true;
  }

  std::vector<Node> nodes_;
};

[[noreturn]] void type_error(Pos pos, const std::string& msg) {
  throw TypeError(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                  ": " + msg);
}

class Inference {
 public:
  Inference(const DataTable& data, Terms& terms) : data_(data), t_(terms) {}

  void add_function(const std::string& name, int type) { funs_[name] = type; }
  bool has_function(const std::string& name) const {
    return funs_.count(name) > 0;
  }
  int function_type(const std::string& name) const { return funs_.at(name); }

  void allow_unknowns() { unknowns_enabled_ = true; }
  const std::vector<std::pair<std::string, int>>& unknowns() const {
    return unknown_order_;
  }

  int from_source(const SType& s, std::map<std::string, int>& vars) {
    switch (s.kind) {
      case STypeKind::kVar: {
        auto it = vars.find(s.name);
        if (it != vars.end()) return it->second;
        return vars[s.name] = t_.var();
      }
      case STypeKind::kUnit:
        return t_.unit();
      case STypeKind::kList:
        return t_.list(from_source(*s.args[0], vars));
      case STypeKind::kTuple: {
        std::vector<int> items;
        for (const auto& a : s.args) items.push_back(from_source(*a, vars));
        return t_.tuple(std::move(items));
      }
      case STypeKind::kArrow:
        return t_.arrow(from_source(*s.args[0], vars),
                        from_source(*s.args[1], vars));
      case STypeKind::kCon: {
        if (s.name == "Int" && s.args.empty()) return t_.integer();
        const DataDecl* d = data_.find(s.name);
        if (d == nullptr) type_error(s.pos, "unknown type '" + s.name + "'");
        if (d->params.size() != s.args.size()) {
          type_error(s.pos, "type '" + s.name + "' expects " +
                                std::to_string(d->params.size()) +
                                " arguments");
        }
        std::vector<int> args;
        for (const auto& a : s.args) args.push_back(from_source(*a, vars));
        return t_.data(s.name, std::move(args));
      }
    }
    return t_.unit();
  }

  // Constructor type as a curried function of its fields.
  int constructor_type(const DataTable::CtorRef& ref, size_t* arity) {
    std::map<std::string, int> vars;
    std::vector<int> args;
    for (const auto& p : ref.data->params) {
      args.push_back(vars[p] = t_.var());
    }
    int result = t_.data(ref.data->name, std::move(args));
    const auto& fields = ref.data->constructors[ref.index].fields;
    *arity = fields.size();
    for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
      result = t_.arrow(from_source(**it, vars), result);
    }
    return result;
  }

  using Scope = std::map<std::string, int>;

  int expr(const SExpr& e, const Scope& scope) {
    const int t = expr_inner(e, scope);
    types_[&e] = t;
    return t;
  }

  std::map<const SExpr*, int>& types() { return types_; }

 private:
  int name_type(const std::string& name, Pos pos, const Scope& scope,
                bool upper) {
    if (!upper) {
      auto it = scope.find(name);
      if (it != scope.end()) return it->second;
    }
    if (upper) {
      if (auto ref = data_.constructor(name)) {
        size_t arity = 0;
        return constructor_type(*ref, &arity);
      }
    }
    auto f = funs_.find(name);
    if (f != funs_.end()) return f->second;
    if (unknowns_enabled_ && !upper) {
      auto u = unknown_types_.find(name);
      if (u != unknown_types_.end()) return u->second;
      const int t = t_.var();
      unknown_types_[name] = t;
      unknown_order_.emplace_back(name, t);
      return t;
    }
    type_error(pos, std::string(upper ? "unknown constructor '"
                                      : "unbound variable '") +
                        name + "'");
  }

  int expr_inner(const SExpr& e, const Scope& scope) {
    switch (e.kind) {
      case SExprKind::kVar:
        return name_type(e.name, e.pos, scope, false);
      case SExprKind::kCon:
        return name_type(e.name, e.pos, scope, true);
      case SExprKind::kInt:
        return t_.integer();
      case SExprKind::kUnit:
        return t_.unit();
      case SExprKind::kApp: {
        int f = expr(*e.items[0], scope);
        for (size_t i = 1; i < e.items.size(); ++i) {
          const int a = expr(*e.items[i], scope);
          const int r = t_.var();
          t_.unify(f, t_.arrow(a, r), e.items[i]->pos, "application");
          f = r;
        }
        return f;
      }
      case SExprKind::kTuple: {
        std::vector<int> items;
        for (const auto& i : e.items) items.push_back(expr(*i, scope));
        return t_.tuple(std::move(items));
      }
      case SExprKind::kList: {
        const int elem = t_.var();
        for (const auto& i : e.items) {
          t_.unify(expr(*i, scope), elem, i->pos, "list element");
        }
        return t_.list(elem);
      }
      case SExprKind::kBinary: {
        const int a = expr(*e.items[0], scope);
        const int b = expr(*e.items[1], scope);
        switch (e.op) {
          case BinOp::kOr:
          case BinOp::kAnd:
            t_.unify(a, t_.boolean(), e.items[0]->pos, to_string(e.op));
            t_.unify(b, t_.boolean(), e.items[1]->pos, to_string(e.op));
            return t_.boolean();
          case BinOp::kEq:
          case BinOp::kNe:
            t_.unify(a, b, e.pos, to_string(e.op));
            return t_.boolean();
          case BinOp::kLt:
          case BinOp::kLe:
          case BinOp::kGt:
          case BinOp::kGe:
            t_.unify(a, t_.integer(), e.items[0]->pos, to_string(e.op));
            t_.unify(b, t_.integer(), e.items[1]->pos, to_string(e.op));
            return t_.boolean();
          case BinOp::kCons:
            t_.unify(b, t_.list(a), e.pos, "':'");
            return b;
          default:
            t_.unify(a, t_.integer(), e.items[0]->pos, to_string(e.op));
            t_.unify(b, t_.integer(), e.items[1]->pos, to_string(e.op));
            return t_.integer();
        }
      }
      case SExprKind::kNot:
        t_.unify(expr(*e.items[0], scope), t_.boolean(), e.pos, "not");
        return t_.boolean();
      case SExprKind::kNeg:
        t_.unify(expr(*e.items[0], scope), t_.integer(), e.pos, "negation");
        return t_.integer();
      case SExprKind::kIf: {
        t_.unify(expr(*e.items[0], scope), t_.boolean(), e.items[0]->pos,
                 "if condition");
        const int a = expr(*e.items[1], scope);
        t_.unify(a, expr(*e.items[2], scope), e.pos, "if branches");
        return a;
      }
      case SExprKind::kSample: {
        const int a = expr(*e.items[0], scope);
        if (!scope.count(e.name) && !(unknowns_enabled_)) {
          type_error(e.pos, "sample of unbound variable '" + e.name + "'");
        }
        name_type(e.name, e.pos, scope, false);
        return a;
      }
      case SExprKind::kCase: {
        const int s = expr(*e.items[0], scope);
        const int r = t_.var();
        for (const Arm& arm : e.arms) {
          if (arm.weight) {
            t_.unify(expr(*arm.weight, scope), t_.integer(), arm.weight->pos,
                     "case weight");
          }
          Scope inner = scope;
          std::set<std::string> bound;
          pattern(*arm.pattern, s, inner, bound);
          t_.unify(expr(*arm.body, inner), r, arm.body->pos, "case arms");
        }
        return r;
      }
    }
    return t_.unit();
  }

  void pattern(const Pattern& p, int expected, Scope& scope,
               std::set<std::string>& bound) {
    switch (p.kind) {
      case PatternKind::kWild:
        return;
      case PatternKind::kVar:
        if (!bound.insert(p.name).second) {
          type_error(p.pos, "variable '" + p.name + "' bound twice in a pattern");
        }
        scope[p.name] = expected;
        return;
      case PatternKind::kTuple: {
        std::vector<int> items;
        for (size_t i = 0; i < p.args.size(); ++i) items.push_back(t_.var());
        t_.unify(expected, t_.tuple(items), p.pos, "tuple pattern");
        for (size_t i = 0; i < p.args.size(); ++i) {
          pattern(*p.args[i], items[i], scope, bound);
        }
        return;
      }
      case PatternKind::kCon: {
        auto ref = data_.constructor(p.name);
        if (!ref) type_error(p.pos, "unknown constructor '" + p.name + "'");
        size_t arity = 0;
        int t = constructor_type(*ref, &arity);
        if (arity != p.args.size()) {
          type_error(p.pos, "constructor '" + p.name + "' expects " +
                                std::to_string(arity) + " arguments");
        }
        std::vector<int> fields;
        for (size_t i = 0; i < arity; ++i) {
          const int f = t_.var();
          const int rest = t_.var();
          t_.unify(t, t_.arrow(f, rest), p.pos, "constructor pattern");
          fields.push_back(f);
          t = rest;
        }
        t_.unify(expected, t, p.pos, "constructor pattern");
        for (size_t i = 0; i < arity; ++i) {
          pattern(*p.args[i], fields[i], scope, bound);
        }
        return;
      }
    }
  }

  const DataTable& data_;
  Terms& t_;
  std::map<std::string, int> funs_;
  std::map<const SExpr*, int> types_;
  bool unknowns_enabled_ = false;
  std::map<std::string, int> unknown_types_;
  std::vector<std::pair<std::string, int>> unknown_order_;
};

}  // namespace

FunctionTypes infer_program(const SurfaceProgram& p, const DataTable& data) {
  Terms terms;
  Inference inf(data, terms);
  for (const FunDecl& f : p.functions) {
    if (data.constructor(f.name)) {
      type_error(f.pos, "function '" + f.name + "' clashes with a constructor");
    }
    const int t = terms.var();
    if (f.signature) {
      std::map<std::string, int> vars;
      terms.unify(t, inf.from_source(*f.signature, vars), f.pos, "signature");
    }
    inf.add_function(f.name, t);
  }
  for (const FunDecl& f : p.functions) {
    if (f.params.empty()) {
      type_error(f.pos, "function '" + f.name + "' needs at least one parameter");
    }
    Inference::Scope scope;
    std::vector<int> params;
    for (const auto& name : f.params) {
      if (scope.count(name)) {
        type_error(f.pos, "parameter '" + name + "' repeated");
      }
      params.push_back(scope[name] = terms.var());
    }
    int t = inf.expr(*f.body, scope);
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      t = terms.arrow(*it, t);
    }
    terms.unify(inf.function_type(f.name), t, f.pos, "function definition");
  }
  FunctionTypes out;
  for (const FunDecl& f : p.functions) {
    out.functions[f.name] = terms.ground(inf.function_type(f.name), true);
  }
  for (const auto& [e, t] : inf.types()) out.exprs[e] = terms.ground(t, true);
  return out;
}

QueryTypes infer_query(const SExpr& query, const DataTable& data,
                       const std::map<std::string, GTypePtr>& functions) {
  Terms terms;
  Inference inf(data, terms);
  for (const auto& [name, g] : functions) {
    inf.add_function(name, terms.from_ground(*g));
  }
  inf.allow_unknowns();
  const int t = inf.expr(query, {});
  terms.unify(t, terms.boolean(), query.pos, "query");
  QueryTypes out;
  for (const auto& [name, ty] : inf.unknowns()) {
    GTypePtr g = terms.ground(ty, false);
    if (g == nullptr) {
      throw TypeError("cannot determine the type of unknown '" + name + "'");
    }
    if (!is_arrow_free(*g)) {
      throw TypeError("unknown '" + name + "' has a function type");
    }
    out.unknowns.emplace_back(name, g);
  }
  for (const auto& [e, ty] : inf.types()) {
    GTypePtr g = terms.ground(ty, false);
    out.exprs[e] = g ? g : terms.ground(ty, true);
  }
  return out;
}

}  // namespace luck::surface
