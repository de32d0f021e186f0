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

#ifndef LUCK_TESTS_SUPPORT_PROPERTIES_H_
#define LUCK_TESTS_SUPPORT_PROPERTIES_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "luck/surface/frontend.h"

namespace luck::testing {

struct PropertyReport {
  uint64_t runs = 0;
  uint64_t checks = 0;
  uint64_t empty = 0;     // runs ending in the empty outcome
  uint64_t timeouts = 0;  // runs stopped by fuel
  std::vector<std::string> failures;
  void fail(std::string what);
};

// Runs the query's expression from its initial store, by matching against
// the target or by plain narrowing, and checks on the brute force
// denotations that the final store only shrinks the queried unknowns and
// that every valuation it keeps evaluates to the outcome.
void check_decreasing_and_sound(const surface::CompiledQuery& q, bool matching,
                                uint64_t seed, uint64_t runs,
                                PropertyReport& report,
                                uint64_t max_denotation = 64);

// Walks every choice sequence of the generator and compares the set of
// valuations it can return with the brute force set of solutions.
void check_completeness(const surface::CompiledQuery& q,
                        PropertyReport& report, uint64_t max_denotation = 32);

// The brute force solutions of a query over its initial store.
std::vector<Valuation> solutions(const surface::CompiledQuery& q);

// Small corpus queries used by the property suites.
struct CorpusQuery {
  std::string program;
  std::string text;
  surface::QueryBounds bounds;
};
std::vector<CorpusQuery> property_queries();
// Keeps parameterized test names stable and readable.
void PrintTo(const CorpusQuery& q, std::ostream* os);

}  // namespace luck::testing

#endif  // LUCK_TESTS_SUPPORT_PROPERTIES_H_
