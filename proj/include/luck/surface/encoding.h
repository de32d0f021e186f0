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

#ifndef LUCK_SURFACE_ENCODING_H_
#define LUCK_SURFACE_ENCODING_H_

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "luck/core/expr.h"
#include "luck/core/type.h"
#include "luck/core/value.h"
#include "luck/surface/types.h"

namespace luck::surface {

// How a datatype instance is laid out in the core calculus: a right-nested
// sum of constructor payloads in declaration order, under a mu when the
// type refers to itself. Payloads are right-nested products of the fields,
// () for none and the field itself for one.
struct DataLayout {
  Type type = nullptr;   // the mu, or the spine when not recursive
  Type spine = nullptr;  // the sum (or the lone payload)
  bool recursive = false;
  std::vector<Type> payloads;
  std::vector<std::vector<GTypePtr>> fields;
};

class Encoder {
 public:
  explicit Encoder(const DataTable& data) : data_(data) {}

  Type core(const GType& t) const;
  const DataLayout& layout(const GType& instance) const;

  // The core expression for constructor ctor applied to payload.
  ExprPtr construct(const GType& instance, size_t ctor, ExprPtr payload) const;
  // Same for values.
  ValuePtr construct_value(const GType& instance, size_t ctor,
                           ValuePtr payload) const;

  // Splits a closed value of the instance into constructor and payload.
  std::pair<size_t, ValuePtr> destruct(const GType& instance,
                                       const ValuePtr& v) const;

  // Surface syntax for a closed value, e.g. "Node 3 Empty Empty" or
  // "[1, 2]".
  std::string render(const Value& v, const GType& t) const;

  const DataTable& data() const { return data_; }

 private:
  Type encode(const GType& t, std::vector<std::string>& stack,
              bool* used_top) const;

  const DataTable& data_;
  mutable std::mutex mu_;
  mutable std::map<std::string, Type> cache_;
  mutable std::map<std::string, DataLayout> layouts_;
};

}  // namespace luck::surface

#endif  // LUCK_SURFACE_ENCODING_H_
