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

#ifndef LUCK_SURFACE_DESUGAR_H_
#define LUCK_SURFACE_DESUGAR_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "luck/core/expr.h"
#include "luck/core/program.h"
#include "luck/surface/ast.h"
#include "luck/surface/encoding.h"
#include "luck/surface/infer.h"

namespace luck::surface {

// Translates expanded, typed surface code into core expressions. Function
// definitions become globals of the target program; structural equality
// at datatypes adds helper globals named "==@<type>" on demand.
class Desugarer {
 public:
  Desugarer(const Encoder& enc, CoreProgram& target,
            std::map<std::string, GTypePtr> function_types);

  // Adds one global per function. The program must already be expanded.
  void define_functions(const SurfaceProgram& expanded, const ExprTypes& types);

  struct Unknown {
    std::string name;
    uint32_t id;
    GTypePtr type;
  };
  ExprPtr query(const SExpr& e, const ExprTypes& types,
                const std::vector<Unknown>& unknowns);

 private:
  struct Scope;
  ExprPtr lower(const SExpr& e, Scope& s);
  ExprPtr lower_case(const SExpr& e, Scope& s);
  ExprPtr lower_data_case(const SExpr& e, const GType& scrut_type,
                          Scope& s);
  ExprPtr bind_fields(const Pattern& pat, const std::vector<GTypePtr>& fields,
                      const SExpr& body, Scope& s);
  ExprPtr equality(const GType& t, const SExpr& a, const SExpr& b, Scope& s);
  const GlobalDef* equality_global(Type t);
  GTypePtr type_of(const SExpr& e) const;

  const Encoder& enc_;
  CoreProgram& target_;
  std::map<std::string, GTypePtr> function_types_;
  const ExprTypes* types_ = nullptr;
  std::map<std::string, std::pair<uint32_t, GTypePtr>> unknowns_;
};

}  // namespace luck::surface

#endif  // LUCK_SURFACE_DESUGAR_H_
