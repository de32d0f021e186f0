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

#ifndef LUCK_TESTS_SUPPORT_SURFACE_EVAL_H_
#define LUCK_TESTS_SUPPORT_SURFACE_EVAL_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "luck/surface/ast.h"

namespace luck::testing {

// A direct interpreter for closed source expressions: nested patterns are
// tried in order, weights and sampling annotations are ignored. It shares
// no code with expansion, desugaring or the core evaluators.
struct SValue {
  enum class Kind { kInt, kCon, kTuple, kUnit } kind = Kind::kUnit;
  int64_t number = 0;
  std::string con;
  std::vector<std::shared_ptr<const SValue>> args;
};
using SValuePtr = std::shared_ptr<const SValue>;

class SurfaceInterpreter {
 public:
  explicit SurfaceInterpreter(const surface::SurfaceProgram& p,
                              uint64_t fuel = 1000000)
      : program_(p), fuel_(fuel) {}

  // nullopt when no arm matches.
  std::optional<SValuePtr> eval(const surface::SExpr& e);
  std::optional<bool> eval_bool(const surface::SExpr& e);

 private:
  struct Env;
  std::optional<SValuePtr> go(const surface::SExpr& e,
                              const std::shared_ptr<const Env>& env);

  const surface::SurfaceProgram& program_;
  uint64_t fuel_;
};

std::string show(const SValue& v);

}  // namespace luck::testing

#endif  // LUCK_TESTS_SUPPORT_SURFACE_EVAL_H_
