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

#include "luck/surface/parser.h"

#include <limits>
#include <map>
#include <set>
#include <utility>

#include "luck/support/error.h"
#include "luck/surface/lexer.h"

namespace luck::surface {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  SurfaceProgram program() {
    SurfaceProgram prog;
    std::map<std::string, std::pair<STypePtr, Pos>> sigs;
    std::set<std::string> names;
    std::set<std::string> constructors;
    auto claim = [&](std::set<std::string>& seen, const std::string& name,
                     Pos pos, const char* what) {
      if (!seen.insert(name).second) {
        throw SyntaxError(std::string("duplicate ") + what + " '" + name + "'",
                          pos.line, pos.column);
      }
    };
    while (!at_eof()) {
      const Token& t = peek();
      if (is_kw("data")) {
        DataDecl d = data_decl();
        claim(names, d.name, d.pos, "declaration");
        for (const auto& c : d.constructors) {
          claim(constructors, c.name, c.pos, "constructor");
        }
        prog.data.push_back(std::move(d));
      } else if (is_kw("sig")) {
        next();
        const Token& name = expect_name();
        expect_sym("::");
        STypePtr type = parse_type();
        if (sigs.count(name.text)) {
          throw SyntaxError("duplicate signature '" + name.text + "'",
                            name.pos.line, name.pos.column);
        }
        sigs[name.text] = {type, name.pos};
      } else if (is_kw("fun")) {
        next();
        FunDecl f;
        const Token& name = expect_name();
        f.name = name.text;
        f.pos = name.pos;
        while (peek().kind == TokenKind::kIdent) f.params.push_back(next().text);
        expect_sym("=");
        f.body = expr();
        claim(names, f.name, f.pos, "declaration");
        prog.functions.push_back(std::move(f));
      } else if (is_kw("bound")) {
        bound_decl(prog);
      } else {
        fail(t, "expected a declaration");
      }
    }
    for (auto& f : prog.functions) {
      auto it = sigs.find(f.name);
      if (it != sigs.end()) {
        f.signature = it->second.first;
        sigs.erase(it);
      }
      if (constructors.count(f.name)) {
        throw SyntaxError("function '" + f.name + "' clashes with a constructor",
                          f.pos.line, f.pos.column);
      }
    }
    if (!sigs.empty()) {
      const auto& [name, entry] = *sigs.begin();
      throw SyntaxError("signature for '" + name + "' has no definition",
                        entry.second.line, entry.second.column);
    }
    return prog;
  }

  SExprPtr standalone_expression() {
    SExprPtr e = expr();
    if (!at_eof()) fail(peek(), "unexpected input after expression");
    return e;
  }

  QueryText query() {
    QueryText q;
    q.expr = expr();
    expect_sym("=");
    const Token& t = peek();
    if (t.kind == TokenKind::kUpper && (t.text == "True" || t.text == "False")) {
      q.target = t.text == "True";
      next();
    } else {
      fail(t, "a query must end in '= True' or '= False'");
    }
    if (!at_eof()) fail(peek(), "unexpected input after query");
    return q;
  }

 private:
  // -- token plumbing ------------------------------------------------------

  const Token& peek(size_t ahead = 0) const {
    const size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_eof() const { return peek().kind == TokenKind::kEof; }
  bool is_sym(std::string_view s, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::kSymbol && t.text == s;
  }
  bool is_kw(std::string_view s) const {
    return peek().kind == TokenKind::kKeyword && peek().text == s;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    std::string got = t.kind == TokenKind::kEof ? "end of input"
                                                : "'" + t.text + "'";
    throw SyntaxError(msg + ", got " + got, t.pos.line, t.pos.column);
  }
  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail(peek(), "expected '" + std::string(s) + "'");
    next();
  }
  void expect_kw(std::string_view s) {
    if (!is_kw(s)) fail(peek(), "expected '" + std::string(s) + "'");
    next();
  }
  const Token& expect_name() {
    const Token& t = peek();
    if (t.kind != TokenKind::kIdent && t.kind != TokenKind::kUpper) {
      fail(t, "expected a name");
    }
    return next();
  }

  // -- declarations --------------------------------------------------------

  DataDecl data_decl() {
    expect_kw("data");
    DataDecl d;
    const Token& name = peek();
    if (name.kind != TokenKind::kUpper) fail(name, "expected a type name");
    d.name = name.text;
    d.pos = name.pos;
    next();
    while (peek().kind == TokenKind::kIdent) d.params.push_back(next().text);
    expect_sym("=");
    do {
      const Token& c = peek();
      if (c.kind != TokenKind::kUpper) fail(c, "expected a constructor");
      Constructor ctor;
      ctor.name = c.text;
      ctor.pos = c.pos;
      next();
      while (starts_atype()) ctor.fields.push_back(atype());
      d.constructors.push_back(std::move(ctor));
    } while (is_sym("|") && (next(), true));
    return d;
  }

  void bound_decl(SurfaceProgram& prog) {
    const Token& kw = next();
    const Token& what = expect_name();
    expect_sym("=");
    if (what.text == "Int") {
      const int64_t lo = signed_int();
      expect_sym("..");
      const int64_t hi = signed_int();
      if (lo > hi) {
        throw SyntaxError("empty integer bound", kw.pos.line, kw.pos.column);
      }
      prog.int_bound = {lo, hi};
    } else if (what.text == "depth") {
      const Token& n = peek();
      if (n.kind != TokenKind::kInt ||
          n.value > std::numeric_limits<uint32_t>::max()) {
        fail(n, "expected a depth");
      }
      prog.depth_bound = static_cast<uint32_t>(n.value);
      next();
    } else {
      fail(what, "expected 'Int' or 'depth'");
    }
  }

  int64_t signed_int() {
    bool negative = false;
    if (is_sym("-")) {
      negative = true;
      next();
    }
    const Token& n = peek();
    if (n.kind != TokenKind::kInt) fail(n, "expected an integer");
    next();
    return negative ? -n.value : n.value;
  }

  // -- types ---------------------------------------------------------------

  bool starts_atype() const {
    const Token& t = peek();
    return t.kind == TokenKind::kUpper || t.kind == TokenKind::kIdent ||
           is_sym("(") || is_sym("[") || is_sym("()");
  }

  STypePtr parse_type() {
    STypePtr left = btype();
    if (is_sym("->")) {
      const Pos pos = next().pos;
      STypePtr right = parse_type();
      return std::make_shared<SType>(
          SType{STypeKind::kArrow, "", {left, right}, pos});
    }
    return left;
  }

  STypePtr btype() {
    const Token& t = peek();
    if (t.kind == TokenKind::kUpper) {
      next();
      SType out{STypeKind::kCon, t.text, {}, t.pos};
      while (starts_atype()) out.args.push_back(atype());
      return std::make_shared<SType>(std::move(out));
    }
    return atype();
  }

  STypePtr atype() {
    const Token& t = peek();
    if (t.kind == TokenKind::kUpper) {
      next();
      return std::make_shared<SType>(SType{STypeKind::kCon, t.text, {}, t.pos});
    }
    if (t.kind == TokenKind::kIdent) {
      next();
      return std::make_shared<SType>(SType{STypeKind::kVar, t.text, {}, t.pos});
    }
    if (is_sym("()")) {
      next();
      return std::make_shared<SType>(SType{STypeKind::kUnit, "", {}, t.pos});
    }
    if (is_sym("[")) {
      next();
      STypePtr elem = parse_type();
      expect_sym("]");
      return std::make_shared<SType>(
          SType{STypeKind::kList, "", {elem}, t.pos});
    }
    if (is_sym("(")) {
      next();
      if (is_sym(")")) {
        next();
        return std::make_shared<SType>(SType{STypeKind::kUnit, "", {}, t.pos});
      }
      std::vector<STypePtr> items{parse_type()};
      while (is_sym(",")) {
        next();
        items.push_back(parse_type());
      }
      expect_sym(")");
      if (items.size() == 1) return items[0];
      return std::make_shared<SType>(
          SType{STypeKind::kTuple, "", std::move(items), t.pos});
    }
    fail(t, "expected a type");
  }

  // -- patterns ------------------------------------------------------------

  PatternPtr pattern() {
    PatternPtr head = pattern_app();
    if (is_sym(":")) {
      const Pos pos = next().pos;
      PatternPtr tail = pattern();
      return mk::pcon(":", {head, tail}, pos);
    }
    return head;
  }

  PatternPtr pattern_app() {
    const Token& t = peek();
    if (t.kind == TokenKind::kUpper) {
      next();
      std::vector<PatternPtr> args;
      while (starts_apattern()) args.push_back(apattern());
      return mk::pcon(t.text, std::move(args), t.pos);
    }
    return apattern();
  }

  bool starts_apattern() const {
    const Token& t = peek();
    return t.kind == TokenKind::kUpper || t.kind == TokenKind::kIdent ||
           is_sym("_") || is_sym("(") || is_sym("[") || is_sym("()");
  }

  PatternPtr apattern() {
    const Token& t = peek();
    if (t.kind == TokenKind::kUpper) {
      next();
      return mk::pcon(t.text, {}, t.pos);
    }
    if (t.kind == TokenKind::kIdent) {
      next();
      return mk::pvar(t.text, t.pos);
    }
    if (is_sym("_")) {
      next();
      return mk::wild(t.pos);
    }
    if (is_sym("()")) {
      next();
      return mk::ptuple({}, t.pos);
    }
    if (is_sym("[")) {
      next();
      std::vector<PatternPtr> items;
      if (!is_sym("]")) {
        items.push_back(pattern());
        while (is_sym(",")) {
          next();
          items.push_back(pattern());
        }
      }
      expect_sym("]");
      PatternPtr out = mk::pcon("[]", {}, t.pos);
      for (auto it = items.rbegin(); it != items.rend(); ++it) {
        out = mk::pcon(":", {*it, out}, (*it)->pos);
      }
      return out;
    }
    if (is_sym("(")) {
      next();
      if (is_sym(")")) {
        next();
        return mk::ptuple({}, t.pos);
      }
      std::vector<PatternPtr> items{pattern()};
      while (is_sym(",")) {
        next();
        items.push_back(pattern());
      }
      expect_sym(")");
      if (items.size() == 1) return items[0];
      return mk::ptuple(std::move(items), t.pos);
    }
    fail(t, "expected a pattern");
  }

  // -- expressions ---------------------------------------------------------

  SExprPtr expr() {
    const Token& t = peek();
    if (is_kw("if")) {
      next();
      SExprPtr c = expr();
      expect_kw("then");
      SExprPtr a = expr();
      expect_kw("else");
      SExprPtr b = expr();
      return mk::if_then_else(c, a, b, t.pos);
    }
    if (is_kw("case")) return case_expr();
    return or_expr();
  }

  SExprPtr case_expr() {
    const Token& kw = next();
    SExprPtr scrutinee = expr();
    expect_kw("of");
    if (!is_sym("|")) fail(peek(), "expected '|' to start a case arm");
    const int arm_column = peek().pos.column;
    std::vector<Arm> arms;
    while (is_sym("|")) {
      const Token& bar = peek();
      if (!arms.empty() && bar.first_on_line && bar.pos.column < arm_column) {
        break;
      }
      next();
      Arm arm;
      arm.pos = bar.pos;
      if (weighted_arm()) {
        arm.weight = additive();
        expect_sym("%");
      }
      arm.pattern = pattern();
      expect_sym("->");
      arm.body = expr();
      arms.push_back(std::move(arm));
    }
    if (is_kw("end")) next();
    return mk::case_of(scrutinee, std::move(arms), kw.pos);
  }

  // True when a '%' appears before this arm's '->'.
  bool weighted_arm() const {
    int depth = 0;
    for (size_t k = pos_; k < toks_.size(); ++k) {
      const Token& t = toks_[k];
      if (t.kind == TokenKind::kEof) return false;
      if (t.kind != TokenKind::kSymbol) continue;
      if (t.text == "(" || t.text == "[") ++depth;
      if (t.text == ")" || t.text == "]") --depth;
      if (depth == 0 && t.text == "%") return true;
      if (depth == 0 && (t.text == "->" || t.text == "|")) return false;
    }
    return false;
  }

  SExprPtr or_expr() {
    SExprPtr left = and_expr();
    if (is_sym("||")) {
      const Pos pos = next().pos;
      return mk::binary(BinOp::kOr, left, or_rhs(), pos);
    }
    return left;
  }
  SExprPtr or_rhs() { return is_kw("if") || is_kw("case") ? expr() : or_expr(); }

  SExprPtr and_expr() {
    SExprPtr left = sample_expr();
    if (is_sym("&&")) {
      const Pos pos = next().pos;
      SExprPtr right = is_kw("if") || is_kw("case") ? expr() : and_expr();
      return mk::binary(BinOp::kAnd, left, right, pos);
    }
    return left;
  }

  SExprPtr sample_expr() {
    SExprPtr e = compare_expr();
    while (is_sym("!")) {
      const Pos pos = next().pos;
      const Token& name = peek();
      if (name.kind != TokenKind::kIdent) fail(name, "expected a variable after '!'");
      next();
      e = mk::sample(e, name.text, pos);
    }
    return e;
  }

  SExprPtr compare_expr() {
    SExprPtr left = cons_expr();
    static const std::map<std::string, BinOp> kOps = {
        {"==", BinOp::kEq}, {"/=", BinOp::kNe}, {"<", BinOp::kLt},
        {"<=", BinOp::kLe}, {">", BinOp::kGt},  {">=", BinOp::kGe}};
    if (peek().kind == TokenKind::kSymbol) {
      auto it = kOps.find(peek().text);
      if (it != kOps.end()) {
        const Pos pos = next().pos;
        return mk::binary(it->second, left, cons_expr(), pos);
      }
    }
    return left;
  }

  SExprPtr cons_expr() {
    SExprPtr head = additive();
    if (is_sym(":")) {
      const Pos pos = next().pos;
      return mk::binary(BinOp::kCons, head, cons_expr(), pos);
    }
    return head;
  }

  SExprPtr additive() {
    SExprPtr e = multiplicative();
    while (is_sym("+") || is_sym("-")) {
      const Token& op = next();
      e = mk::binary(op.text == "+" ? BinOp::kAdd : BinOp::kSub, e,
                     multiplicative(), op.pos);
    }
    return e;
  }

  SExprPtr multiplicative() {
    SExprPtr e = unary();
    while (is_sym("*") || is_sym("/")) {
      const Token& op = next();
      e = mk::binary(op.text == "*" ? BinOp::kMul : BinOp::kDiv, e, unary(),
                     op.pos);
    }
    return e;
  }

  SExprPtr unary() {
    const Token& t = peek();
    if (is_kw("not")) {
      next();
      return mk::negation(unary(), t.pos);
    }
    if (is_sym("-")) {
      next();
      if (peek().kind == TokenKind::kInt) {
        return mk::integer(-next().value, t.pos);
      }
      return mk::minus(unary(), t.pos);
    }
    return application();
  }

  bool starts_atom() const {
    const Token& t = peek();
    return t.kind == TokenKind::kIdent || t.kind == TokenKind::kUpper ||
           t.kind == TokenKind::kInt || is_sym("(") || is_sym("[") ||
           is_sym("()");
  }

  SExprPtr application() {
    const Pos pos = peek().pos;
    std::vector<SExprPtr> items{atom()};
    while (starts_atom()) items.push_back(atom());
    if (items.size() == 1) return items[0];
    return mk::app(std::move(items), pos);
  }

  SExprPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kIdent:
        next();
        return mk::var(t.text, t.pos);
      case TokenKind::kUpper:
        next();
        return mk::con(t.text, t.pos);
      case TokenKind::kInt:
        next();
        return mk::integer(t.value, t.pos);
      default:
        break;
    }
    if (is_sym("()")) {
      next();
      return mk::unit(t.pos);
    }
    if (is_sym("[")) {
      next();
      if (is_sym("]")) {
        next();
        return mk::con("[]", t.pos);
      }
      std::vector<SExprPtr> items{expr()};
      while (is_sym(",")) {
        next();
        items.push_back(expr());
      }
      expect_sym("]");
      return mk::list(std::move(items), t.pos);
    }
    if (is_sym("(")) {
      next();
      if (is_sym(")")) {
        next();
        return mk::unit(t.pos);
      }
      // "(x | e)" names the variable e constrains; it reads as e.
      if (peek().kind == TokenKind::kIdent && is_sym("|", 1)) {
        next();
        next();
      }
      std::vector<SExprPtr> items{expr()};
      while (is_sym(",")) {
        next();
        items.push_back(expr());
      }
      expect_sym(")");
      if (items.size() == 1) return items[0];
      return mk::tuple(std::move(items), t.pos);
    }
    fail(t, "expected an expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

SurfaceProgram parse_program(std::string_view text) {
  return Parser(text).program();
}

SExprPtr parse_expression(std::string_view text) {
  return Parser(text).standalone_expression();
}

QueryText parse_query(std::string_view text) { return Parser(text).query(); }

}  // namespace luck::surface
