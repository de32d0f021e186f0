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

#include "luck/surface/ast.h"

#include <sstream>
#include <utility>

namespace luck::surface {

const FunDecl* SurfaceProgram::find_function(const std::string& name) const {
  for (const auto& f : functions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

size_t SurfaceProgram::declaration_count() const {
  return data.size() + functions.size() + (int_bound ? 1 : 0) +
         (depth_bound ? 1 : 0);
}

namespace mk {
namespace {

SExprPtr node(SExprKind kind, std::vector<SExprPtr> items, Pos pos) {
  auto e = std::make_shared<SExpr>();
  e->kind = kind;
  e->items = std::move(items);
  e->pos = pos;
  return e;
}

}  // namespace

SExprPtr var(std::string name, Pos pos) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExprKind::kVar;
  e->name = std::move(name);
  e->pos = pos;
  return e;
}
SExprPtr con(std::string name, Pos pos) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExprKind::kCon;
  e->name = std::move(name);
  e->pos = pos;
  return e;
}
SExprPtr integer(int64_t value, Pos pos) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExprKind::kInt;
  e->value = value;
  e->pos = pos;
  return e;
}
SExprPtr unit(Pos pos) { return node(SExprKind::kUnit, {}, pos); }
SExprPtr app(std::vector<SExprPtr> items, Pos pos) {
  return node(SExprKind::kApp, std::move(items), pos);
}
SExprPtr tuple(std::vector<SExprPtr> items, Pos pos) {
  return node(SExprKind::kTuple, std::move(items), pos);
}
SExprPtr list(std::vector<SExprPtr> items, Pos pos) {
  return node(SExprKind::kList, std::move(items), pos);
}
SExprPtr binary(BinOp op, SExprPtr a, SExprPtr b, Pos pos) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExprKind::kBinary;
  e->op = op;
  e->items = {std::move(a), std::move(b)};
  e->pos = pos;
  return e;
}
SExprPtr negation(SExprPtr a, Pos pos) {
  return node(SExprKind::kNot, {std::move(a)}, pos);
}
SExprPtr minus(SExprPtr a, Pos pos) {
  return node(SExprKind::kNeg, {std::move(a)}, pos);
}
SExprPtr if_then_else(SExprPtr c, SExprPtr t, SExprPtr e, Pos pos) {
  return node(SExprKind::kIf, {std::move(c), std::move(t), std::move(e)}, pos);
}
SExprPtr case_of(SExprPtr scrutinee, std::vector<Arm> arms, Pos pos) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExprKind::kCase;
  e->items = {std::move(scrutinee)};
  e->arms = std::move(arms);
  e->pos = pos;
  return e;
}
SExprPtr sample(SExprPtr a, std::string name, Pos pos) {
  auto e = std::make_shared<SExpr>();
  e->kind = SExprKind::kSample;
  e->items = {std::move(a)};
  e->name = std::move(name);
  e->pos = pos;
  return e;
}

PatternPtr wild(Pos pos) {
  return std::make_shared<Pattern>(Pattern{PatternKind::kWild, "", {}, pos});
}
PatternPtr pvar(std::string name, Pos pos) {
  return std::make_shared<Pattern>(
      Pattern{PatternKind::kVar, std::move(name), {}, pos});
}
PatternPtr pcon(std::string name, std::vector<PatternPtr> args, Pos pos) {
  return std::make_shared<Pattern>(
      Pattern{PatternKind::kCon, std::move(name), std::move(args), pos});
}
PatternPtr ptuple(std::vector<PatternPtr> args, Pos pos) {
  return std::make_shared<Pattern>(
      Pattern{PatternKind::kTuple, "", std::move(args), pos});
}

}  // namespace mk

const char* to_string(BinOp op) {
  switch (op) {
    case BinOp::kOr: return "||";
    case BinOp::kAnd: return "&&";
    case BinOp::kEq: return "==";
    case BinOp::kNe: return "/=";
    case BinOp::kLt: return "<";
    case BinOp::kLe: return "<=";
    case BinOp::kGt: return ">";
    case BinOp::kGe: return ">=";
    case BinOp::kCons: return ":";
    case BinOp::kAdd: return "+";
    case BinOp::kSub: return "-";
    case BinOp::kMul: return "*";
    case BinOp::kDiv: return "/";
  }
  return "?";
}

namespace {

// -- types -------------------------------------------------------------------

void print_type(std::ostream& os, const SType& t, int prec) {
  switch (t.kind) {
    case STypeKind::kVar:
      os << t.name;
      return;
    case STypeKind::kUnit:
      os << "()";
      return;
    case STypeKind::kList:
      os << "[";
      print_type(os, *t.args[0], 0);
      os << "]";
      return;
    case STypeKind::kTuple:
      os << "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ", ";
        print_type(os, *t.args[i], 0);
      }
      os << ")";
      return;
    case STypeKind::kCon:
      if (t.args.empty()) {
        os << t.name;
        return;
      }
      if (prec > 1) os << "(";
      os << t.name;
      for (const auto& a : t.args) {
        os << " ";
        print_type(os, *a, 2);
      }
      if (prec > 1) os << ")";
      return;
    case STypeKind::kArrow:
      if (prec > 0) os << "(";
      print_type(os, *t.args[0], 1);
      os << " -> ";
      print_type(os, *t.args[1], 0);
      if (prec > 0) os << ")";
      return;
  }
}

// -- patterns ----------------------------------------------------------------

// 0: top, 1: constructor argument position.
void print_pattern(std::ostream& os, const Pattern& p, int prec) {
  switch (p.kind) {
    case PatternKind::kWild:
      os << "_";
      return;
    case PatternKind::kVar:
      os << p.name;
      return;
    case PatternKind::kTuple:
      os << "(";
      for (size_t i = 0; i < p.args.size(); ++i) {
        if (i) os << ", ";
        print_pattern(os, *p.args[i], 0);
      }
      os << ")";
      return;
    case PatternKind::kCon:
      if (p.name == "[]") {
        os << "[]";
        return;
      }
      if (p.name == ":") {
        if (prec > 0) os << "(";
        print_pattern(os, *p.args[0], 1);
        os << ":";
        print_pattern(os, *p.args[1], 0);
        if (prec > 0) os << ")";
        return;
      }
      if (p.args.empty()) {
        os << p.name;
        return;
      }
      if (prec > 0) os << "(";
      os << p.name;
      for (const auto& a : p.args) {
        os << " ";
        print_pattern(os, *a, 1);
      }
      if (prec > 0) os << ")";
      return;
  }
}

// -- expressions -------------------------------------------------------------

int precedence(const SExpr& e) {
  switch (e.kind) {
    case SExprKind::kIf:
    case SExprKind::kCase:
      return 0;
    case SExprKind::kSample:
      return 3;
    case SExprKind::kNot:
    case SExprKind::kNeg:
      return 8;
    case SExprKind::kApp:
      return 9;
    case SExprKind::kInt:
      return e.value < 0 ? 8 : 10;
    case SExprKind::kBinary:
      switch (e.op) {
        case BinOp::kOr: return 1;
        case BinOp::kAnd: return 2;
        case BinOp::kCons: return 5;
        case BinOp::kAdd:
        case BinOp::kSub: return 6;
        case BinOp::kMul:
        case BinOp::kDiv: return 7;
        default: return 4;
      }
    default:
      return 10;
  }
}

class ExprPrinter {
 public:
  explicit ExprPrinter(std::ostream& os) : os_(os) {}

  void print(const SExpr& e, int need, int indent) {
    if (precedence(e) < need) {
      os_ << "(";
      body(e, indent);
      os_ << ")";
    } else {
      body(e, indent);
    }
  }

 private:
  void newline(int indent) { os_ << "\n" << std::string(indent, ' '); }

  void body(const SExpr& e, int indent) {
    switch (e.kind) {
      case SExprKind::kVar:
      case SExprKind::kCon:
        os_ << e.name;
        return;
      case SExprKind::kInt:
        os_ << e.value;
        return;
      case SExprKind::kUnit:
        os_ << "()";
        return;
      case SExprKind::kApp:
        for (size_t i = 0; i < e.items.size(); ++i) {
          if (i) os_ << " ";
          print(*e.items[i], 10, indent);
        }
        return;
      case SExprKind::kTuple:
      case SExprKind::kList:
        os_ << (e.kind == SExprKind::kTuple ? "(" : "[");
        for (size_t i = 0; i < e.items.size(); ++i) {
          if (i) os_ << ", ";
          print(*e.items[i], 0, indent);
        }
        os_ << (e.kind == SExprKind::kTuple ? ")" : "]");
        return;
      case SExprKind::kBinary: {
        const int p = precedence(e);
        int left = p + 1, right = p + 1;
        if (e.op == BinOp::kOr || e.op == BinOp::kAnd ||
            e.op == BinOp::kCons) {
          right = p;
        } else if (p >= 6) {
          left = p;
        }
        if (e.op == BinOp::kAnd) left = 3;
        print(*e.items[0], left, indent);
        os_ << " " << to_string(e.op) << " ";
        print(*e.items[1], right, indent);
        return;
      }
      case SExprKind::kNot:
        os_ << "not ";
        print(*e.items[0], 9, indent);
        return;
      case SExprKind::kNeg:
        os_ << "-";
        print(*e.items[0], 9, indent);
        return;
      case SExprKind::kSample:
        print(*e.items[0], 3, indent);
        os_ << " !" << e.name;
        return;
      case SExprKind::kIf:
        os_ << "if ";
        print(*e.items[0], 0, indent);
        os_ << " then ";
        print(*e.items[1], 0, indent + 2);
        os_ << " else ";
        print(*e.items[2], 0, indent + 2);
        return;
      case SExprKind::kCase:
        os_ << "case ";
        print(*e.items[0], 0, indent);
        os_ << " of";
        for (const Arm& arm : e.arms) {
          newline(indent + 2);
          os_ << "| ";
          if (arm.weight) {
            print(*arm.weight, 6, indent);
            os_ << " % ";
          }
          print_pattern(os_, *arm.pattern, 0);
          os_ << " -> ";
          print(*arm.body, 0, indent + 4);
        }
        newline(indent + 2);
        os_ << "end";
        return;
    }
  }

  std::ostream& os_;
};

}  // namespace

std::string to_string(const SType& t) {
  std::ostringstream os;
  print_type(os, t, 0);
  return os.str();
}

std::string to_string(const Pattern& p) {
  std::ostringstream os;
  print_pattern(os, p, 0);
  return os.str();
}

std::string to_string(const SExpr& e) {
  std::ostringstream os;
  ExprPrinter(os).print(e, 0, 0);
  return os.str();
}

std::string to_string(const SurfaceProgram& p) {
  std::ostringstream os;
  if (p.int_bound) {
    os << "bound Int = " << p.int_bound->first << " .. " << p.int_bound->second
       << "\n";
  }
  if (p.depth_bound) os << "bound depth = " << *p.depth_bound << "\n";
  if (p.int_bound || p.depth_bound) os << "\n";
  for (const DataDecl& d : p.data) {
    os << "data " << d.name;
    for (const auto& param : d.params) os << " " << param;
    os << " =";
    for (size_t i = 0; i < d.constructors.size(); ++i) {
      os << (i ? " | " : " ") << d.constructors[i].name;
      for (const auto& f : d.constructors[i].fields) {
        os << " ";
        print_type(os, *f, 2);
      }
    }
    os << "\n\n";
  }
  for (const FunDecl& f : p.functions) {
    if (f.signature) os << "sig " << f.name << " :: " << to_string(*f.signature) << "\n";
    os << "fun " << f.name;
    for (const auto& param : f.params) os << " " << param;
    os << " =\n  ";
    ExprPrinter(os).print(*f.body, 0, 2);
    os << "\n\n";
  }
  return os.str();
}

// -- structural equality -----------------------------------------------------

namespace {

template <typename T>
bool all_same(const std::vector<std::shared_ptr<const T>>& a,
              const std::vector<std::shared_ptr<const T>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == nullptr) != (b[i] == nullptr)) return false;
    if (a[i] && !same(*a[i], *b[i])) return false;
  }
  return true;
}

}  // namespace

bool same(const SType& a, const SType& b) {
  return a.kind == b.kind && a.name == b.name && all_same(a.args, b.args);
}

bool same(const Pattern& a, const Pattern& b) {
  return a.kind == b.kind && a.name == b.name && all_same(a.args, b.args);
}

bool same(const SExpr& a, const SExpr& b) {
  if (a.kind != b.kind || a.name != b.name || a.value != b.value) return false;
  if (a.kind == SExprKind::kBinary && a.op != b.op) return false;
  if (!all_same(a.items, b.items) || a.arms.size() != b.arms.size()) {
    return false;
  }
  for (size_t i = 0; i < a.arms.size(); ++i) {
    const Arm& x = a.arms[i];
    const Arm& y = b.arms[i];
    if ((x.weight == nullptr) != (y.weight == nullptr)) return false;
    if (x.weight && !same(*x.weight, *y.weight)) return false;
    if (!same(*x.pattern, *y.pattern) || !same(*x.body, *y.body)) return false;
  }
  return true;
}

bool same(const SurfaceProgram& a, const SurfaceProgram& b) {
  if (a.int_bound != b.int_bound || a.depth_bound != b.depth_bound ||
      a.data.size() != b.data.size() ||
      a.functions.size() != b.functions.size()) {
    return false;
  }
  for (size_t i = 0; i < a.data.size(); ++i) {
    const DataDecl& x = a.data[i];
    const DataDecl& y = b.data[i];
    if (x.name != y.name || x.params != y.params ||
        x.constructors.size() != y.constructors.size()) {
      return false;
    }
    for (size_t j = 0; j < x.constructors.size(); ++j) {
      if (x.constructors[j].name != y.constructors[j].name ||
          !all_same(x.constructors[j].fields, y.constructors[j].fields)) {
        return false;
      }
    }
  }
  for (size_t i = 0; i < a.functions.size(); ++i) {
    const FunDecl& x = a.functions[i];
    const FunDecl& y = b.functions[i];
    if (x.name != y.name || x.params != y.params) return false;
    if ((x.signature == nullptr) != (y.signature == nullptr)) return false;
    if (x.signature && !same(*x.signature, *y.signature)) return false;
    if (!same(*x.body, *y.body)) return false;
  }
  return true;
}

}  // namespace luck::surface
