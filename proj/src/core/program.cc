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

#include "luck/core/program.h"

#include "luck/core/typecheck.h"
#include "luck/support/error.h"

namespace luck {

GlobalDef* CoreProgram::add(const std::string& name) {
  if (by_name_.count(name) != 0) {
    throw TypeError("duplicate definition of " + name);
  }
  globals_.push_back(std::make_unique<GlobalDef>());
  GlobalDef* def = globals_.back().get();
  def->name = name;
  by_name_[name] = def;
  return def;
}

GlobalDef* CoreProgram::find(const std::string& name) {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

const GlobalDef* CoreProgram::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

void CoreProgram::finalize() {
  for (auto& def : globals_) {
    if (def->closure != nullptr) continue;
    if (def->body == nullptr) throw TypeError("no body for " + def->name);
    def->body = annotate(TypingEnv{}, def->body);
    if (def->body->type != def->type) {
      throw TypeError("definition " + def->name + " has type " +
                      type_to_string(def->body->type) + ", declared " +
                      type_to_string(def->type));
    }
    if (def->body->kind != ExprKind::kLam) {
      throw TypeError("definition " + def->name + " is not a function");
    }
    def->closure = val::closure(def->body.get(), nullptr);
  }
}

}  // namespace luck
