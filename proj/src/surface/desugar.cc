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

#include "luck/surface/desugar.h"

#include <functional>
#include <optional>
#include <utility>

#include "luck/support/error.h"
#include "luck/surface/expand.h"

namespace luck::surface {
namespace {

[[noreturn]] void type_error_at(Pos pos, const std::string& msg) {
  throw TypeError(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                  ": " + msg);
}

bool is_binder(const Pattern& p) {
  return p.kind == PatternKind::kVar || p.kind == PatternKind::kWild;
}

std::string binder_name(const Pattern& p) {
  return p.kind == PatternKind::kVar ? p.name : std::string();
}

// Names of the enclosing binders, innermost last. Empty names are never
// looked up.
struct Names {
  std::vector<std::string> v;
  std::optional<uint32_t> find(const std::string& n) const {
    for (size_t i = v.size(); i-- > 0;) {
      if (v[i] == n) return static_cast<uint32_t>(v.size() - 1 - i);
    }
    return std::nullopt;
  }
  ExprPtr var(const std::string& n) const {
    auto i = find(n);
    if (!i) throw ContractViolation("unbound core name " + n);
    return build::var(*i, n);
  }
  void push(std::string n) { v.push_back(std::move(n)); }
  void pop() { v.pop_back(); }
};

template <class F>
ExprPtr under(Names& s, std::initializer_list<std::string> names, F&& f) {
  for (const auto& n : names) s.push(n);
  ExprPtr out = f();
  for (size_t i = 0; i < names.size(); ++i) s.pop();
  return out;
}

}  // namespace

struct Desugarer::Scope : Names {};

Desugarer::Desugarer(const Encoder& enc, CoreProgram& target,
                     std::map<std::string, GTypePtr> function_types)
    : enc_(enc), target_(target), function_types_(std::move(function_types)) {}

GTypePtr Desugarer::type_of(const SExpr& e) const {
  if (types_ != nullptr) {
    auto it = types_->find(&e);
    if (it != types_->end()) return it->second;
  }
  if (e.kind == SExprKind::kInt || e.kind == SExprKind::kNeg ||
      (e.kind == SExprKind::kBinary &&
       (e.op == BinOp::kAdd || e.op == BinOp::kSub || e.op == BinOp::kMul ||
        e.op == BinOp::kDiv))) {
    return gt::integer();
  }
  throw ContractViolation("no type recorded for " + to_string(e));
}

void Desugarer::define_functions(const SurfaceProgram& expanded,
                                 const ExprTypes& types) {
  types_ = &types;
  std::vector<GlobalDef*> defs;
  for (const FunDecl& f : expanded.functions) {
    GlobalDef* def = target_.add(f.name);
    def->type = enc_.core(*function_types_.at(f.name));
    defs.push_back(def);
  }
  for (size_t i = 0; i < expanded.functions.size(); ++i) {
    const FunDecl& f = expanded.functions[i];
    Scope s;
    std::vector<std::pair<Type, std::string>> lams;
    GTypePtr t = function_types_.at(f.name);
    for (const std::string& p : f.params) {
      if (t->kind != GKind::kArrow) {
        type_error_at(f.pos, "too many parameters for " + f.name);
      }
      lams.emplace_back(enc_.core(*t), p);
      s.push("");
      s.push(p);
      t = t->args[1];
    }
    ExprPtr body = lower(*f.body, s);
    for (size_t j = lams.size(); j-- > 0;) {
      body = build::lam("", lams[j].second, lams[j].first, body);
    }
    defs[i]->body = body;
  }
  types_ = nullptr;
}

ExprPtr Desugarer::query(const SExpr& e, const ExprTypes& types,
                         const std::vector<Unknown>& unknowns) {
  types_ = &types;
  unknowns_.clear();
  for (const auto& u : unknowns) unknowns_[u.name] = {u.id, u.type};
  Scope s;
  ExprPtr out = lower(e, s);
  types_ = nullptr;
  unknowns_.clear();
  return out;
}

ExprPtr Desugarer::lower(const SExpr& e, Scope& s) {
  auto name_ref = [&](const std::string& name) -> ExprPtr {
    if (auto i = s.find(name)) return build::var(*i, name);
    auto u = unknowns_.find(name);
    if (u != unknowns_.end()) return build::unknown(u->second.first);
    if (const GlobalDef* g = target_.find(name)) return build::global(g);
    type_error_at(e.pos, "unbound identifier " + name);
  };
  auto pairs = [&](const std::vector<SExprPtr>& items, size_t from) {
    if (from == items.size()) return build::unit();
    std::vector<ExprPtr> lowered;
    for (size_t i = from; i < items.size(); ++i) {
      lowered.push_back(lower(*items[i], s));
    }
    ExprPtr out = lowered.back();
    for (size_t i = lowered.size() - 1; i-- > 0;) {
      out = build::pair(lowered[i], out);
    }
    return out;
  };
  auto branch2 = [&](const ExprPtr& scrut, auto&& left, auto&& right) {
    ExprPtr l = under(s, {""}, left);
    ExprPtr r = under(s, {""}, right);
    return build::case_of(scrut, "", l, "", r);
  };
  auto constant = [](bool b) {
    return [b] { return b ? build::true_expr() : build::false_expr(); };
  };

  switch (e.kind) {
    case SExprKind::kVar:
      return name_ref(e.name);
    case SExprKind::kCon: {
      auto ref = enc_.data().constructor(e.name);
      if (!ref) return name_ref(e.name);
      if (!ref->data->constructors[ref->index].fields.empty()) {
        type_error_at(e.pos, "constructor " + e.name + " needs " +
                                 std::to_string(ref->data->constructors[ref->index]
                                                    .fields.size()) +
                                 " arguments");
      }
      return enc_.construct(*type_of(e), ref->index, build::unit());
    }
    case SExprKind::kInt:
      return build::int_lit(e.value);
    case SExprKind::kUnit:
      return build::unit();
    case SExprKind::kApp: {
      const SExpr& head = *e.items[0];
      if (head.kind == SExprKind::kCon &&
          enc_.data().constructor(head.name)) {
        auto ref = enc_.data().constructor(head.name);
        const size_t arity = ref->data->constructors[ref->index].fields.size();
        if (arity != e.items.size() - 1) {
          type_error_at(e.pos, "constructor " + head.name + " takes " +
                                   std::to_string(arity) + " arguments, got " +
                                   std::to_string(e.items.size() - 1));
        }
        return enc_.construct(*type_of(e), ref->index, pairs(e.items, 1));
      }
      ExprPtr out = lower(head, s);
      for (size_t i = 1; i < e.items.size(); ++i) {
        out = build::app(out, lower(*e.items[i], s));
      }
      return out;
    }
    case SExprKind::kTuple:
      return pairs(e.items, 0);
    case SExprKind::kList: {
      GTypePtr t = type_of(e);
      ExprPtr out = enc_.construct(*t, 0, build::unit());
      for (size_t i = e.items.size(); i-- > 0;) {
        out = enc_.construct(*t, 1, build::pair(lower(*e.items[i], s), out));
      }
      return out;
    }
    case SExprKind::kBinary: {
      const SExpr& a = *e.items[0];
      const SExpr& b = *e.items[1];
      switch (e.op) {
        case BinOp::kOr:
          return branch2(lower(a, s), constant(true),
                         [&] { return lower(b, s); });
        case BinOp::kAnd:
          return branch2(lower(a, s), [&] { return lower(b, s); },
                         constant(false));
        case BinOp::kEq:
        case BinOp::kNe: {
          GTypePtr t = type_of(a);
          if (t->kind == GKind::kInt) {
            return build::compare(e.op == BinOp::kEq ? CmpOp::kEq : CmpOp::kNe,
                                  lower(a, s), lower(b, s));
          }
          ExprPtr eq = equality(*t, a, b, s);
          if (e.op == BinOp::kEq) return eq;
          return branch2(eq, constant(false), constant(true));
        }
        case BinOp::kLt:
          return build::compare(CmpOp::kLt, lower(a, s), lower(b, s));
        case BinOp::kLe:
          return build::compare(CmpOp::kLe, lower(a, s), lower(b, s));
        case BinOp::kGt:
          return build::compare(CmpOp::kGt, lower(a, s), lower(b, s));
        case BinOp::kGe:
          return build::compare(CmpOp::kGe, lower(a, s), lower(b, s));
        case BinOp::kCons:
          return enc_.construct(*type_of(e), 1,
                                build::pair(lower(a, s), lower(b, s)));
        case BinOp::kAdd:
          return build::arith(ArithOp::kAdd, lower(a, s), lower(b, s));
        case BinOp::kSub:
          return build::arith(ArithOp::kSub, lower(a, s), lower(b, s));
        case BinOp::kMul:
          return build::arith(ArithOp::kMul, lower(a, s), lower(b, s));
        case BinOp::kDiv:
          return build::arith(ArithOp::kDiv, lower(a, s), lower(b, s));
      }
      break;
    }
    case SExprKind::kNot:
      return branch2(lower(*e.items[0], s), constant(false), constant(true));
    case SExprKind::kNeg:
      return build::arith(ArithOp::kSub, build::int_lit(0),
                          lower(*e.items[0], s));
    case SExprKind::kIf:
      return branch2(lower(*e.items[0], s),
                     [&] { return lower(*e.items[1], s); },
                     [&] { return lower(*e.items[2], s); });
    case SExprKind::kSample:
      return build::after(lower(*e.items[0], s), build::bang(name_ref(e.name)));
    case SExprKind::kCase:
      return lower_case(e, s);
  }
  throw ContractViolation("unhandled surface expression");
}

ExprPtr Desugarer::lower_case(const SExpr& e, Scope& s) {
  const SExpr& scrut = *e.items[0];
  GTypePtr t = type_of(scrut);
  if (e.arms.empty()) type_error_at(e.pos, "case without arms");
  const Arm& first = e.arms[0];
  if (e.arms.size() == 1 && is_binder(*first.pattern)) {
    Type arrow = arrow_type(enc_.core(*t), enc_.core(*type_of(e)));
    ExprPtr value = lower(scrut, s);
    ExprPtr body = under(s, {"", binder_name(*first.pattern)},
                         [&] { return lower(*first.body, s); });
    return build::app(build::lam("", binder_name(*first.pattern), arrow, body),
                      value);
  }
  switch (t->kind) {
    case GKind::kTuple: {
      if (e.arms.size() != 1 || first.pattern->kind != PatternKind::kTuple) {
        type_error_at(e.pos, "a tuple case needs exactly one tuple pattern");
      }
      ExprPtr value = lower(scrut, s);
      Type arrow = arrow_type(enc_.core(*t), enc_.core(*type_of(e)));
      ExprPtr body = under(s, {"", ""}, [&] {
        return bind_fields(*first.pattern, t->args, *first.body, s);
      });
      return build::app(build::lam("", "", arrow, body), value);
    }
    case GKind::kData:
      return lower_data_case(e, *t, s);
    default:
      type_error_at(e.pos, "cannot match constructors against " + to_string(*t));
  }
}

// The value being taken apart is variable 0. Binds the pattern's fields,
// which are all variables or wildcards, and lowers body under them.
ExprPtr Desugarer::bind_fields(const Pattern& pat,
                               const std::vector<GTypePtr>& fields,
                               const SExpr& body, Scope& s) {
  const size_t n = pat.args.size();
  if (n != fields.size()) {
    type_error_at(pat.pos, "pattern has " + std::to_string(n) +
                               " fields, expected " +
                               std::to_string(fields.size()));
  }
  for (const auto& a : pat.args) {
    if (!is_binder(*a)) {
      throw ContractViolation("nested pattern survived expansion: " +
                              to_string(pat));
    }
  }
  if (n == 0) return lower(body, s);
  if (n == 1) {
    // The payload itself is the field; rename the binder in place.
    const std::string name = binder_name(*pat.args[0]);
    s.v.back() = name;
    ExprPtr out = lower(body, s);
    s.v.back() = "";
    return out;
  }
  auto level = [&](auto&& self, size_t i) -> ExprPtr {
    const std::string x = binder_name(*pat.args[i]);
    if (i + 2 == n) {
      const std::string y = binder_name(*pat.args[i + 1]);
      return build::case_pair(build::var(0), x, y,
                              under(s, {x, y}, [&] { return lower(body, s); }));
    }
    return build::case_pair(build::var(0), x, "",
                            under(s, {x, ""}, [&] { return self(self, i + 1); }));
  };
  return level(level, 0);
}

ExprPtr Desugarer::lower_data_case(const SExpr& e, const GType& t, Scope& s) {
  const DataLayout& layout = enc_.layout(t);
  const size_t k = layout.payloads.size();
  const std::vector<ConstructorArm> arms = constructor_arms(e, enc_.data());
  if (arms.size() != k) throw ContractViolation("constructor count mismatch");
  const Type result = enc_.core(*type_of(e));

  // Lowers the branch for constructor j with its payload at variable 0,
  // which the caller has already pushed as an empty name.
  auto branch = [&](size_t j) -> ExprPtr {
    const int a = arms[j].arm;
    if (a < 0) return build::fail(result);
    const Arm& arm = e.arms[static_cast<size_t>(a)];
    const Pattern& pat = *arm.pattern;
    if (pat.kind == PatternKind::kWild) return lower(*arm.body, s);
    if (pat.kind == PatternKind::kVar) {
      ExprPtr whole = enc_.construct(t, j, build::var(0));
      ExprPtr body =
          under(s, {"", pat.name}, [&] { return lower(*arm.body, s); });
      return build::app(
          build::lam("", pat.name, arrow_type(layout.type, result), body),
          whole);
    }
    return bind_fields(pat, layout.fields[j], *arm.body, s);
  };

  ExprPtr scrut = lower(*e.items[0], s);
  if (layout.recursive) scrut = build::unfold(layout.type, scrut);
  if (k == 1) {
    ExprPtr body = under(s, {"", ""}, [&] { return branch(0); });
    return build::app(
        build::lam("", "", arrow_type(layout.payloads[0], result), body),
        scrut);
  }
  auto weight = [&](size_t j) { return lower(*arms[j].weight, s); };
  auto level = [&](auto&& self, size_t j, ExprPtr on) -> ExprPtr {
    ExprPtr w = weight(j);
    ExprPtr rest = weight(j + 1);
    for (size_t m = j + 2; m < k; ++m) {
      rest = build::arith(ArithOp::kAdd, rest, weight(m));
    }
    ExprPtr left = under(s, {""}, [&] { return branch(j); });
    ExprPtr right = under(s, {""}, [&] {
      return j + 2 == k ? branch(k - 1) : self(self, j + 1, build::var(0));
    });
    return build::case_of(build::inst(on, w, rest), "", left, "", right,
                          /*narrow_discriminee=*/true);
  };
  return level(level, 0, scrut);
}

namespace {

struct EqBuilder {
  std::function<const GlobalDef*(Type)> global_for;
  Names names;
  int counter = 0;

  std::string fresh(const char* stem) {
    return std::string(stem) + std::to_string(++counter);
  }

  ExprPtr both(const std::function<ExprPtr()>& first,
               const std::function<ExprPtr()>& second) {
    ExprPtr l = under(names, {""}, second);
    ExprPtr r = under(names, {""}, [] { return build::false_expr(); });
    return build::case_of(first(), "", l, "", r);
  }

  ExprPtr eq(Type t, const std::string& a, const std::string& b) {
    switch (t->kind) {
      case TypeKind::kInt:
        return build::compare(CmpOp::kEq, names.var(a), names.var(b));
      case TypeKind::kUnit:
        return build::true_expr();
      case TypeKind::kProd: {
        const std::string a1 = fresh("a"), a2 = fresh("a");
        const std::string b1 = fresh("b"), b2 = fresh("b");
        ExprPtr sa = names.var(a);
        return build::case_pair(sa, a1, a2, under(names, {a1, a2}, [&] {
          ExprPtr sb = names.var(b);
          return build::case_pair(sb, b1, b2, under(names, {b1, b2}, [&] {
            return both([&] { return eq(t->left, a1, b1); },
                        [&] { return eq(t->right, a2, b2); });
          }));
        }));
      }
      case TypeKind::kSum: {
        const std::string a1 = fresh("a"), b1 = fresh("b");
        ExprPtr sa = names.var(a);
        ExprPtr left = under(names, {a1}, [&] {
          ExprPtr sb = names.var(b);
          ExprPtr same = under(names, {b1}, [&] { return eq(t->left, a1, b1); });
          return build::case_of(sb, b1, same, "", build::false_expr());
        });
        ExprPtr right = under(names, {a1}, [&] {
          ExprPtr sb = names.var(b);
          ExprPtr same =
              under(names, {b1}, [&] { return eq(t->right, a1, b1); });
          return build::case_of(sb, "", build::false_expr(), b1, same);
        });
        return build::case_of(sa, a1, left, a1, right);
      }
      case TypeKind::kMu:
        return build::app(build::app(build::global(global_for(t)), names.var(a)),
                          names.var(b));
      case TypeKind::kArrow:
        throw TypeError("cannot compare functions for equality");
      case TypeKind::kVar:
        break;
    }
    throw ContractViolation("equality on an open type");
  }

  ExprPtr let(const std::string& name, Type type, ExprPtr value,
              const std::function<ExprPtr()>& body) {
    ExprPtr b = under(names, {"", name}, body);
    return build::app(build::lam("", name, arrow_type(type, bool_type()), b),
                      value);
  }
};

}  // namespace

const GlobalDef* Desugarer::equality_global(Type t) {
  const std::string name = "==@" + type_to_string(t);
  if (const GlobalDef* g = target_.find(name)) return g;
  GlobalDef* def = target_.add(name);
  const Type inner = arrow_type(t, bool_type());
  def->type = arrow_type(t, inner);
  EqBuilder eb;
  eb.global_for = [this](Type m) { return equality_global(m); };
  ExprPtr body = under(eb.names, {"", "x", "", "y"}, [&] {
    if (t->kind != TypeKind::kMu) return eb.eq(t, "x", "y");
    const Type u = unfold_type(t);
    return eb.let("ux", u, build::unfold(t, eb.names.var("x")), [&] {
      return eb.let("uy", u, build::unfold(t, eb.names.var("y")),
                    [&] { return eb.eq(u, "ux", "uy"); });
    });
  });
  def->body = build::lam("", "x", def->type, build::lam("", "y", inner, body));
  return def;
}

ExprPtr Desugarer::equality(const GType& t, const SExpr& a, const SExpr& b,
                            Scope& s) {
  const GlobalDef* g = equality_global(enc_.core(t));
  return build::app(build::app(build::global(g), lower(a, s)), lower(b, s));
}

}  // namespace luck::surface
