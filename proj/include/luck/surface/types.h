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

#ifndef LUCK_SURFACE_TYPES_H_
#define LUCK_SURFACE_TYPES_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "luck/surface/ast.h"

namespace luck::surface {

// A fully resolved source type: datatypes applied to ground arguments.
enum class GKind : uint8_t { kInt, kUnit, kTuple, kData, kArrow };

struct GType;
using GTypePtr = std::shared_ptr<const GType>;

struct GType {
  GKind kind;
  std::string name;  // kData
  std::vector<GTypePtr> args;
};

namespace gt {
GTypePtr integer();
GTypePtr unit();
GTypePtr boolean();
GTypePtr list(GTypePtr elem);
GTypePtr tuple(std::vector<GTypePtr> items);
GTypePtr data(std::string name, std::vector<GTypePtr> args);
GTypePtr arrow(GTypePtr from, GTypePtr to);
}  // namespace gt

std::string to_string(const GType& t);
bool same(const GType& a, const GType& b);
bool is_arrow_free(const GType& t);

inline constexpr const char* kBoolType = "Bool";
inline constexpr const char* kListType = "List";
inline constexpr const char* kNil = "[]";
inline constexpr const char* kCons = ":";

// Datatype declarations, including the built-in Bool and List.
class DataTable {
 public:
  struct CtorRef {
    const DataDecl* data;
    size_t index;
  };

  // Throws SyntaxError for unknown types, wrong arities, unbound type
  // parameters, and clashes with the built-ins.
  explicit DataTable(const std::vector<DataDecl>& declared);

  const DataDecl* find(const std::string& name) const;
  std::optional<CtorRef> constructor(const std::string& name) const;
  // Field types of a constructor at a ground instance of its datatype.
  std::vector<GTypePtr> fields(const GType& instance, size_t ctor) const;
  // Resolves a source type whose variables are bound in vars.
  GTypePtr ground(const SType& t,
                  const std::map<std::string, GTypePtr>& vars) const;

 private:
  void check_type(const SType& t, const DataDecl& owner) const;

  std::vector<DataDecl> decls_;
  std::map<std::string, size_t> by_name_;
  std::map<std::string, std::pair<size_t, size_t>> ctors_;
};

}  // namespace luck::surface

#endif  // LUCK_SURFACE_TYPES_H_
