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

#ifndef LUCK_SURFACE_LEXER_H_
#define LUCK_SURFACE_LEXER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "luck/surface/ast.h"

namespace luck::surface {

enum class TokenKind : uint8_t {
  kIdent,    // starts with a lower-case letter or an underscore
  kUpper,    // starts with an upper-case letter
  kInt,
  kKeyword,
  kSymbol,
  kEof,
};

struct Token {
  TokenKind kind;
  std::string text;
  int64_t value = 0;
  Pos pos;
  bool first_on_line = false;
};

// Splits source text into tokens; the last token is always kEof.
// Throws SyntaxError on characters outside the language.
std::vector<Token> tokenize(std::string_view text);

bool is_keyword(std::string_view word);

}  // namespace luck::surface

#endif  // LUCK_SURFACE_LEXER_H_
