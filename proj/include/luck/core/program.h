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

#ifndef LUCK_CORE_PROGRAM_H_
#define LUCK_CORE_PROGRAM_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "luck/core/expr.h"
#include "luck/core/value.h"

namespace luck {

// A top-level, possibly recursive, definition. Its body is a closed lambda.
struct GlobalDef {
  std::string name;
  Type type = nullptr;
  ExprPtr body;
  ValuePtr closure;  // set by CoreProgram::finalize
};

class CoreProgram {
 public:
  GlobalDef* add(const std::string& name);
  GlobalDef* find(const std::string& name);
  const GlobalDef* find(const std::string& name) const;
  const std::vector<std::unique_ptr<GlobalDef>>& globals() const {
    return globals_;
  }
  // Typechecks every body added since the last call against its declared
  // type and builds closures.
  void finalize();

 private:
  std::vector<std::unique_ptr<GlobalDef>> globals_;
  std::map<std::string, GlobalDef*> by_name_;
};

}  // namespace luck

#endif  // LUCK_CORE_PROGRAM_H_
