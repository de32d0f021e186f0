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

#ifndef LUCK_EVAL_TRACE_H_
#define LUCK_EVAL_TRACE_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace luck {

// One random decision: index taken out of arity, with probability num/den.
struct Choice {
  uint32_t index = 0;
  uint32_t arity = 0;
  uint64_t num = 1;
  uint64_t den = 1;
  bool operator==(const Choice&) const = default;
};

class Trace {
 public:
  void add(Choice c);
  void append(const Trace& other);
  void clear() { choices_.clear(); }

  const std::vector<Choice>& choices() const { return choices_; }
  size_t size() const { return choices_.size(); }
  bool empty() const { return choices_.empty(); }

  // Product of the per-choice probabilities; 1 for the empty trace.
  mpq_class probability() const;
  // (index, arity) pairs, usable as a replay script.
  std::vector<std::pair<uint32_t, uint32_t>> script() const;
  // "[(m,n),...]"
  std::string choices_string() const;

 private:
  std::vector<Choice> choices_;
};

// seed=<u64> choices=[(m,n),...] q=<num>/<den>
std::string format_trace_line(uint64_t seed, const Trace& trace);

struct TraceLine {
  uint64_t seed = 0;
  std::vector<std::pair<uint32_t, uint32_t>> choices;
  mpq_class q;
};
// Throws LuckError on malformed input.
TraceLine parse_trace_line(const std::string& line);

}  // namespace luck

#endif  // LUCK_EVAL_TRACE_H_
