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

#ifndef LUCK_SURFACE_PARSER_H_
#define LUCK_SURFACE_PARSER_H_

#include <string_view>

#include "luck/surface/ast.h"

namespace luck::surface {

// Throws SyntaxError (with line and column) on malformed input and on
// duplicate declarations.
SurfaceProgram parse_program(std::string_view text);

SExprPtr parse_expression(std::string_view text);

// "e = True" or "e = False".
struct QueryText {
  SExprPtr expr;
  bool target = true;
};
QueryText parse_query(std::string_view text);

}  // namespace luck::surface

#endif  // LUCK_SURFACE_PARSER_H_
