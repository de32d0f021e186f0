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

#include "luck/surface/lexer.h"

#include <array>
#include <cctype>
#include <charconv>

#include "luck/support/error.h"

namespace luck::surface {
namespace {

constexpr std::array<std::string_view, 11> kKeywords = {
    "data", "sig", "fun", "case", "of", "end",
    "if",   "then", "else", "not", "bound"};

constexpr std::array<std::string_view, 10> kLongSymbols = {
    "->", "::", "..", "&&", "||", "==", "/=", "<=", ">=", "()"};

constexpr std::string_view kShortSymbols = "()[],|%=:!<>+-*/_";

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, column = 1;
  bool line_start = true;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
        line_start = true;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (text.substr(i, 2) == "--") {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (text.substr(i, 2) == "{-") {
      const Pos open{line, column};
      int depth = 0;
      do {
        if (i >= text.size()) {
          throw SyntaxError("unterminated block comment", open.line,
                            open.column);
        }
        if (text.substr(i, 2) == "{-") {
          ++depth;
          advance(2);
        } else if (text.substr(i, 2) == "-}") {
          --depth;
          advance(2);
        } else {
          advance(1);
        }
      } while (depth > 0);
      continue;
    }
    Token tok;
    tok.pos = Pos{line, column};
    tok.first_on_line = line_start;
    line_start = false;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = TokenKind::kInt;
      tok.text = std::string(text.substr(i, j - i));
      auto [ptr, ec] =
          std::from_chars(text.data() + i, text.data() + j, tok.value);
      if (ec != std::errc()) {
        throw SyntaxError("integer literal out of range", line, column);
      }
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) ||
        (c == '_' && i + 1 < text.size() && ident_char(text[i + 1]))) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.text = std::string(text.substr(i, j - i));
      if (is_keyword(tok.text)) {
        tok.kind = TokenKind::kKeyword;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        tok.kind = TokenKind::kUpper;
      } else {
        tok.kind = TokenKind::kIdent;
      }
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    tok.kind = TokenKind::kSymbol;
    bool matched = false;
    for (auto s : kLongSymbols) {
      if (text.substr(i, s.size()) == s) {
        tok.text = std::string(s);
        matched = true;
        break;
      }
    }
    if (!matched) {
      if (kShortSymbols.find(c) == std::string_view::npos) {
        throw SyntaxError(std::string("unexpected character '") + c + "'",
                          line, column);
      }
      tok.text = std::string(1, c);
    }
    advance(tok.text.size());
    out.push_back(std::move(tok));
  }
  Token eof;
  eof.kind = TokenKind::kEof;
  eof.pos = Pos{line, column};
  eof.first_on_line = true;
  out.push_back(std::move(eof));
  return out;
}

}  // namespace luck::surface
