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

#ifndef LUCK_SURFACE_INFER_H_
#define LUCK_SURFACE_INFER_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "luck/surface/ast.h"
#include "luck/surface/types.h"

namespace luck::surface {

using ExprTypes = std::map<const SExpr*, GTypePtr>;

// Each function gets one monomorphic type; type variables in signatures
// are fixed by use, and any left open default to ().
struct FunctionTypes {
  std::map<std::string, GTypePtr> functions;
  ExprTypes exprs;
};

// Throws TypeError with a "line:col:" prefix.
FunctionTypes infer_program(const SurfaceProgram& p, const DataTable& data);

struct QueryTypes {
  ExprTypes exprs;
  // Free identifiers in order of first occurrence, with their types.
  std::vector<std::pair<std::string, GTypePtr>> unknowns;
};

QueryTypes infer_query(const SExpr& query, const DataTable& data,
                       const std::map<std::string, GTypePtr>& functions);

}  // namespace luck::surface

#endif  // LUCK_SURFACE_INFER_H_
