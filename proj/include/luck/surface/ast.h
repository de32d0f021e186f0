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

#ifndef LUCK_SURFACE_AST_H_
#define LUCK_SURFACE_AST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace luck::surface {

struct Pos {
  int line = 0;
  int column = 0;
};

// Source-level types as written in signatures and data declarations.
enum class STypeKind : uint8_t { kVar, kCon, kArrow, kTuple, kList, kUnit };

struct SType;
using STypePtr = std::shared_ptr<const SType>;

struct SType {
  STypeKind kind;
  std::string name;  // kVar, kCon
  std::vector<STypePtr> args;
  Pos pos;
};

enum class PatternKind : uint8_t { kWild, kVar, kCon, kTuple };

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

// Lists use the constructors "[]" and ":".
struct Pattern {
  PatternKind kind;
  std::string name;  // kVar, kCon
  std::vector<PatternPtr> args;
  Pos pos;
};

enum class BinOp : uint8_t {
  kOr, kAnd, kEq, kNe, kLt, kLe, kGt, kGe, kCons, kAdd, kSub, kMul, kDiv
};

enum class SExprKind : uint8_t {
  kVar,
  kCon,     // bare constructor; applied ones are kApp with a kCon head
  kInt,
  kUnit,
  kApp,     // items[0] applied to items[1..]
  kTuple,   // items, at least two
  kList,    // [items...]
  kBinary,  // items[0] op items[1]
  kNot,     // not items[0]
  kNeg,     // - items[0]
  kIf,      // if items[0] then items[1] else items[2]
  kCase,    // case items[0] of arms
  kSample,  // items[0] !name
};

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct Arm {
  SExprPtr weight;  // nullptr when written without one
  PatternPtr pattern;
  SExprPtr body;
  Pos pos;
};

struct SExpr {
  SExprKind kind;
  std::string name;  // kVar, kCon, kSample
  int64_t value = 0;
  BinOp op = BinOp::kAnd;
  std::vector<SExprPtr> items;
  std::vector<Arm> arms;
  Pos pos;
};

struct Constructor {
  std::string name;
  std::vector<STypePtr> fields;
  Pos pos;
};

struct DataDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<Constructor> constructors;
  Pos pos;
};

struct FunDecl {
  std::string name;
  STypePtr signature;  // nullptr when there is no sig line
  std::vector<std::string> params;
  SExprPtr body;
  Pos pos;
};

struct SurfaceProgram {
  std::vector<DataDecl> data;
  std::vector<FunDecl> functions;
  std::optional<std::pair<int64_t, int64_t>> int_bound;
  std::optional<uint32_t> depth_bound;

  const FunDecl* find_function(const std::string& name) const;
  size_t declaration_count() const;
};

namespace mk {

SExprPtr var(std::string name, Pos pos = {});
SExprPtr con(std::string name, Pos pos = {});
SExprPtr integer(int64_t value, Pos pos = {});
SExprPtr unit(Pos pos = {});
SExprPtr app(std::vector<SExprPtr> items, Pos pos = {});
SExprPtr tuple(std::vector<SExprPtr> items, Pos pos = {});
SExprPtr list(std::vector<SExprPtr> items, Pos pos = {});
SExprPtr binary(BinOp op, SExprPtr a, SExprPtr b, Pos pos = {});
SExprPtr negation(SExprPtr a, Pos pos = {});
SExprPtr minus(SExprPtr a, Pos pos = {});
SExprPtr if_then_else(SExprPtr c, SExprPtr t, SExprPtr e, Pos pos = {});
SExprPtr case_of(SExprPtr scrutinee, std::vector<Arm> arms, Pos pos = {});
SExprPtr sample(SExprPtr e, std::string name, Pos pos = {});

PatternPtr wild(Pos pos = {});
PatternPtr pvar(std::string name, Pos pos = {});
PatternPtr pcon(std::string name, std::vector<PatternPtr> args,
                Pos pos = {});
PatternPtr ptuple(std::vector<PatternPtr> args, Pos pos = {});

}  // namespace mk

// Canonical text. Parsing the output gives back an equal tree.
std::string to_string(const SType& t);
std::string to_string(const Pattern& p);
std::string to_string(const SExpr& e);
std::string to_string(const SurfaceProgram& p);

// Structural equality ignoring positions.
bool same(const SType& a, const SType& b);
bool same(const Pattern& a, const Pattern& b);
bool same(const SExpr& a, const SExpr& b);
bool same(const SurfaceProgram& a, const SurfaceProgram& b);

const char* to_string(BinOp op);

}  // namespace luck::surface

#endif  // LUCK_SURFACE_AST_H_
