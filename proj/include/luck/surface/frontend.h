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

#ifndef LUCK_SURFACE_FRONTEND_H_
#define LUCK_SURFACE_FRONTEND_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "luck/constraints/constraint_set.h"
#include "luck/core/program.h"
#include "luck/surface/ast.h"
#include "luck/surface/desugar.h"
#include "luck/surface/encoding.h"
#include "luck/surface/infer.h"
#include "luck/surface/types.h"

namespace luck::surface {

// A parsed, expanded, typed and desugared program. Compiling a query may
// add equality helpers to the core program, so queries are compiled before
// any generation starts.
class LoadedProgram {
 public:
  explicit LoadedProgram(std::string_view text);
  LoadedProgram(const LoadedProgram&) = delete;
  LoadedProgram& operator=(const LoadedProgram&) = delete;

  const SurfaceProgram& surface() const { return surface_; }
  const SurfaceProgram& expanded() const { return expanded_; }
  const DataTable& data() const { return *data_; }
  const Encoder& encoder() const { return *encoder_; }
  const FunctionTypes& types() const { return types_; }
  const CoreProgram& core() const { return *core_; }
  CoreProgram& core() { return *core_; }
  Desugarer& desugarer() { return *desugarer_; }

 private:
  SurfaceProgram surface_;
  SurfaceProgram expanded_;
  std::unique_ptr<DataTable> data_;
  std::unique_ptr<Encoder> encoder_;
  FunctionTypes types_;
  std::unique_ptr<CoreProgram> core_;
  std::unique_ptr<Desugarer> desugarer_;
};

std::shared_ptr<LoadedProgram> load_program(std::string_view text);
std::shared_ptr<LoadedProgram> load_program_file(const std::string& path);

struct QueryUnknown {
  std::string name;
  uint32_t id = 0;
  GTypePtr type;
  Type core = nullptr;
};

struct QueryBounds {
  std::optional<std::pair<int64_t, int64_t>> ints;
  std::optional<uint32_t> depth;
};

struct CompiledQuery {
  std::shared_ptr<LoadedProgram> program;
  std::string text;
  ExprPtr expr;  // typed, of type Bool
  bool target = true;
  std::vector<QueryUnknown> unknowns;
  ConstraintSet store;  // the unknowns with their domains
  std::optional<std::pair<int64_t, int64_t>> int_bound;
  std::optional<uint32_t> depth;

  ValuePtr target_value() const;
  std::vector<uint32_t> ids() const;
  // "u = Node 3 Empty Empty, v = 2"
  std::string render(const Valuation& s) const;
  std::string render_value(size_t i, const Valuation& s) const;
};

// Parses "e = True" or "e = False"; free identifiers are the unknowns.
// Integer unknowns take their bounds from, in order, the explicit bound,
// the program's "bound Int" line and the range of the query's integer
// literals; with none of these the query is rejected. Recursive unknowns
// are limited to the explicit or declared depth when there is one.
CompiledQuery compile_query(const std::shared_ptr<LoadedProgram>& program,
                            std::string_view text,
                            const QueryBounds& bounds = {});

}  // namespace luck::surface

#endif  // LUCK_SURFACE_FRONTEND_H_
