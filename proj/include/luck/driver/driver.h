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

#ifndef LUCK_DRIVER_DRIVER_H_
#define LUCK_DRIVER_DRIVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "luck/constraints/constraint_set.h"
#include "luck/eval/evaluator.h"
#include "luck/eval/trace.h"
#include "luck/support/random.h"
#include "luck/surface/frontend.h"

namespace luck {

struct Budget {
  uint32_t max_attempts = 1000;
  uint64_t fuel = kDefaultFuel;
  bool local_backtracking = true;
  bool prune = true;
  // Re-run every result through the predicate semantics and discard the
  // ones that do not satisfy the query.
  bool recheck = true;
};

struct GenReport {
  bool success = false;
  std::string failure;  // "exhausted" or "fuel exhausted" when !success
  Valuation valuation;  // exactly the queried unknowns on success
  uint32_t attempts = 0;
  uint64_t local_backtracks = 0;
  uint32_t discards = 0;
  uint32_t recheck_failures = 0;
  double elapsed_ms = 0;
  uint64_t seed = 0;          // the seed the query was started with
  uint64_t attempt_seed = 0;  // the seed of the successful attempt
  Trace trace;                // choices of the successful attempt
};

struct AttemptResult {
  std::optional<Valuation> valuation;
  Trace trace;
  uint64_t local_backtracks = 0;
  bool recheck_failed = false;
};

// One match of the query against its target followed by final sampling.
AttemptResult run_attempt(const surface::CompiledQuery& q,
                          ChoiceSource& choices, const Budget& budget);

// Pins every unknown in us, one at a time and left to right inside each
// one's known structure, drawing uniformly among the remaining values.
// Stores that turn out empty are dropped and a sibling drawn instead.
std::optional<Valuation> sample_final(ConstraintSet& k,
                                      const std::vector<uint32_t>& us,
                                      ChoiceSource& choices, Trace& t,
                                      uint64_t cap =
                                          ConstraintSet::kDefaultEnumerationCap);

// Retries whole attempts until one succeeds or the budget runs out.
// FuelExhausted ends the query with failure "fuel exhausted".
GenReport run_query(const surface::CompiledQuery& q, uint64_t seed,
                    const Budget& budget = {});

// count independent queries; query i runs on the i-th seed drawn from a
// generator seeded with seed, so results do not depend on jobs.
std::vector<GenReport> run_batch(const surface::CompiledQuery& q,
                                 uint64_t seed, size_t count,
                                 const Budget& budget = {}, unsigned jobs = 1);

// Reruns the attempt recorded in a trace line by feeding back its choices.
// nullopt when the choices do not drive the query to a result.
std::optional<AttemptResult> replay(const surface::CompiledQuery& q,
                                    const TraceLine& line,
                                    const Budget& budget = {});

// The trace line of a successful report.
std::string trace_line(const GenReport& r);

}  // namespace luck

#endif  // LUCK_DRIVER_DRIVER_H_
