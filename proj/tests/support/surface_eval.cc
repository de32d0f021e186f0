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

#include "support/surface_eval.h"

#include <map>
#include <stdexcept>

namespace luck::testing {

using surface::BinOp;
using surface::Pattern;
using surface::PatternKind;
using surface::SExpr;
using surface::SExprKind;

struct SurfaceInterpreter::Env {
  std::string name;
  SValuePtr value;
  std::shared_ptr<const Env> next;
};

namespace {

SValuePtr make_int(int64_t n) {
  auto v = std::make_shared<SValue>();
  v->kind = SValue::Kind::kInt;
  v->number = n;
  return v;
}

SValuePtr make_con(std::string name, std::vector<SValuePtr> args = {}) {
  auto v = std::make_shared<SValue>();
  v->kind = SValue::Kind::kCon;
  v->con = std::move(name);
  v->args = std::move(args);
  return v;
}

SValuePtr make_bool(bool b) { return make_con(b ? "True" : "False"); }

bool truth(const SValue& v) {
  if (v.kind != SValue::Kind::kCon || (v.con != "True" && v.con != "False")) {
    throw std::runtime_error("expected a boolean, got " + show(v));
  }
  return v.con == "True";
}

bool equal(const SValue& a, const SValue& b) {
  if (a.kind != b.kind || a.number != b.number || a.con != b.con ||
      a.args.size() != b.args.size()) {
    return false;
  }
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

int64_t floor_div(int64_t a, int64_t b) {
  if (b == 0) throw std::runtime_error("division by zero");
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool bind(const Pattern& p, const SValuePtr& v,
          std::vector<std::pair<std::string, SValuePtr>>& out) {
  switch (p.kind) {
    case PatternKind::kWild:
      return true;
    case PatternKind::kVar:
      out.emplace_back(p.name, v);
      return true;
    case PatternKind::kTuple:
      if (v->kind != SValue::Kind::kTuple || v->args.size() != p.args.size()) {
        return false;
      }
      for (size_t i = 0; i < p.args.size(); ++i) {
        if (!bind(*p.args[i], v->args[i], out)) return false;
      }
      return true;
    case PatternKind::kCon:
      if (v->kind != SValue::Kind::kCon || v->con != p.name ||
          v->args.size() != p.args.size()) {
        return false;
      }
      for (size_t i = 0; i < p.args.size(); ++i) {
        if (!bind(*p.args[i], v->args[i], out)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

std::string show(const SValue& v) {
  switch (v.kind) {
    case SValue::Kind::kInt:
      return std::to_string(v.number);
    case SValue::Kind::kUnit:
      return "()";
    case SValue::Kind::kTuple: {
      std::string s = "(";
      for (size_t i = 0; i < v.args.size(); ++i) {
        s += (i ? ", " : "") + show(*v.args[i]);
      }
      return s + ")";
    }
    case SValue::Kind::kCon: {
      std::string s = "(" + v.con;
      for (const auto& a : v.args) s += " " + show(*a);
      return s + ")";
    }
  }
  return "?";
}

std::optional<SValuePtr> SurfaceInterpreter::eval(const SExpr& e) {
  return go(e, nullptr);
}

std::optional<bool> SurfaceInterpreter::eval_bool(const SExpr& e) {
  auto v = eval(e);
  if (!v) return std::nullopt;
  return truth(**v);
}

std::optional<SValuePtr> SurfaceInterpreter::go(
    const SExpr& e, const std::shared_ptr<const Env>& env) {
  if (fuel_-- == 0) throw std::runtime_error("out of fuel");
  auto sub = [&](size_t i) { return go(*e.items[i], env); };
  switch (e.kind) {
    case SExprKind::kInt:
      return make_int(e.value);
    case SExprKind::kUnit:
      return std::make_shared<SValue>();
    case SExprKind::kCon: {
      const auto* f = program_.find_function(e.name);
      if (f != nullptr && f->params.empty()) return go(*f->body, nullptr);
      return make_con(e.name);
    }
    case SExprKind::kVar: {
      for (auto p = env; p; p = p->next) {
        if (p->name == e.name) return p->value;
      }
      const auto* f = program_.find_function(e.name);
      if (f != nullptr && f->params.empty()) return go(*f->body, nullptr);
      throw std::runtime_error("unbound " + e.name);
    }
    case SExprKind::kTuple: {
      auto v = std::make_shared<SValue>();
      v->kind = SValue::Kind::kTuple;
      for (size_t i = 0; i < e.items.size(); ++i) {
        auto x = sub(i);
        if (!x) return std::nullopt;
        v->args.push_back(*x);
      }
      return v;
    }
    case SExprKind::kList: {
      SValuePtr out = make_con("[]");
      for (size_t i = e.items.size(); i-- > 0;) {
        auto x = sub(i);
        if (!x) return std::nullopt;
        out = make_con(":", {*x, out});
      }
      return out;
    }
    case SExprKind::kApp: {
      std::vector<SValuePtr> args;
      for (size_t i = 1; i < e.items.size(); ++i) {
        auto x = sub(i);
        if (!x) return std::nullopt;
        args.push_back(*x);
      }
      const SExpr& head = *e.items[0];
      const auto* f = program_.find_function(head.name);
      if (f == nullptr && head.kind == SExprKind::kCon) {
        return make_con(head.name, args);
      }
      if (f == nullptr || f->params.size() != args.size()) {
        throw std::runtime_error("bad call of " + head.name);
      }
      std::shared_ptr<const Env> frame;
      for (size_t i = 0; i < args.size(); ++i) {
        frame = std::make_shared<const Env>(Env{f->params[i], args[i], frame});
      }
      return go(*f->body, frame);
    }
    case SExprKind::kBinary: {
      if (e.op == BinOp::kAnd || e.op == BinOp::kOr) {
        auto a = sub(0);
        if (!a) return std::nullopt;
        const bool ta = truth(**a);
        if (e.op == BinOp::kAnd && !ta) return make_bool(false);
        if (e.op == BinOp::kOr && ta) return make_bool(true);
        return sub(1);
      }
      auto a = sub(0);
      if (!a) return std::nullopt;
      auto b = sub(1);
      if (!b) return std::nullopt;
      const SValue& x = **a;
      const SValue& y = **b;
      switch (e.op) {
        case BinOp::kEq:
          return make_bool(equal(x, y));
        case BinOp::kNe:
          return make_bool(!equal(x, y));
        case BinOp::kLt:
          return make_bool(x.number < y.number);
        case BinOp::kLe:
          return make_bool(x.number <= y.number);
        case BinOp::kGt:
          return make_bool(x.number > y.number);
        case BinOp::kGe:
          return make_bool(x.number >= y.number);
        case BinOp::kCons:
          return make_con(":", {*a, *b});
        case BinOp::kAdd:
          return make_int(x.number + y.number);
        case BinOp::kSub:
          return make_int(x.number - y.number);
        case BinOp::kMul:
          return make_int(x.number * y.number);
        case BinOp::kDiv:
          return make_int(floor_div(x.number, y.number));
        default:
          throw std::runtime_error("bad operator");
      }
    }
    case SExprKind::kNot: {
      auto a = sub(0);
      if (!a) return std::nullopt;
      return make_bool(!truth(**a));
    }
    case SExprKind::kNeg: {
      auto a = sub(0);
      if (!a) return std::nullopt;
      return make_int(-(*a)->number);
    }
    case SExprKind::kIf: {
      auto c = sub(0);
      if (!c) return std::nullopt;
      return truth(**c) ? sub(1) : sub(2);
    }
    case SExprKind::kSample:
      return sub(0);
    case SExprKind::kCase: {
      auto v = sub(0);
      if (!v) return std::nullopt;
      for (const auto& arm : e.arms) {
        std::vector<std::pair<std::string, SValuePtr>> bound;
        if (!bind(*arm.pattern, *v, bound)) continue;
        auto frame = env;
        for (auto& [name, value] : bound) {
          frame = std::make_shared<const Env>(Env{name, value, frame});
        }
        return go(*arm.body, frame);
      }
      return std::nullopt;
    }
  }
  throw std::runtime_error("unhandled expression");
}

}  // namespace luck::testing
