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

#ifndef LUCK_SURFACE_EXPAND_H_
#define LUCK_SURFACE_EXPAND_H_

#include <gmpxx.h>

#include <string>
#include <vector>

#include "luck/surface/ast.h"
#include "luck/surface/types.h"

namespace luck::surface {

// One leaf of an expanded case: the constructors chosen on the way down,
// the source arm it came from (-1 for an implicit failing arm) and, when
// every weight on the path is a literal, its probability.
struct ExpansionLeaf {
  std::vector<std::string> path;
  int arm = -1;
  bool has_probability = false;
  mpq_class probability;
};

struct CaseExpansion {
  SExprPtr expr;
  std::vector<ExpansionLeaf> leaves;
  bool changed = false;
};

// Compiles one case expression (not its sub-expressions) into simple
// cases. Arms that are already one constructor deep come back unchanged.
// Throws SyntaxError for unknown constructors, arity mismatches and arms
// that can never be reached.
CaseExpansion expand_case(const SExpr& case_expr, const DataTable& data);

SExprPtr expand_expression(const SExprPtr& e, const DataTable& data);
SurfaceProgram expand_patterns(const SurfaceProgram& p);

// True when every arm is one level deep with distinct constructors and
// only the last arm may be a variable or wildcard.
bool is_simple_case(const SExpr& case_expr);

// For a simple case over a datatype: which arm each constructor reaches
// (-1 for none) and the integer weight expression it gets. A trailing
// variable arm shares its weight evenly among the constructors it covers.
struct ConstructorArm {
  int arm = -1;
  SExprPtr weight;
};
std::vector<ConstructorArm> constructor_arms(const SExpr& simple_case,
                                             const DataTable& data);

// Replaces free occurrences of a variable.
SExprPtr rename_free(const SExprPtr& e, const std::string& from,
                     const std::string& to);

}  // namespace luck::surface

#endif  // LUCK_SURFACE_EXPAND_H_
