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

#include "luck/driver/driver.h"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "luck/eval/predicate.h"
#include "luck/support/error.h"

namespace luck {
namespace {

// The first unpinned unknown inside v, left to right.
std::optional<uint32_t> first_open(const ConstraintSet& k, const ValuePtr& v) {
  switch (v->kind) {
    case ValueKind::kUnknown:
      if (k.index(v->unknown) == nullptr) return v->unknown;
      return std::nullopt;
    case ValueKind::kPair:
      if (auto u = first_open(k, v->a)) return u;
      return first_open(k, v->b);
    case ValueKind::kInl:
    case ValueKind::kInr:
    case ValueKind::kFold:
      return first_open(k, v->a);
    default:
      return std::nullopt;
  }
}

bool pin_whole(ConstraintSet& k, uint32_t u, ChoiceSource& choices, Trace& t,
               uint64_t cap) {
  if (auto n = k.cheap_sample_size(u)) {
    if (*n == 0) return false;
    if (*n > UINT32_MAX) throw LuckError("domain too large to sample");
    const uint32_t size = static_cast<uint32_t>(*n);
    uint32_t m = 0;
    if (size > 1) {
      m = choices.pick_uniform(size);
      t.add(Choice{m, size, 1, size});
    }
    k = k.cheap_sample_at(u, m);
    return k.sat();
  }
  std::vector<ConstraintSet> options = k.sample(u, cap);
  std::vector<ConstraintSet> live;
  for (auto& o : options) {
    if (o.sat()) live.push_back(std::move(o));
  }
  if (live.empty()) return false;
  uint32_t m = 0;
  const uint32_t size = static_cast<uint32_t>(live.size());
  if (size > 1) {
    m = choices.pick_uniform(size);
    t.add(Choice{m, size, 1, size});
  }
  k = std::move(live[m]);
  return true;
}

bool pin(ConstraintSet& k, uint32_t u, ChoiceSource& choices, Trace& t,
         uint64_t cap) {
  while (k.sat() && k.index(u) == nullptr) {
    ValuePtr shape = k.expose(u);
    if (shape == nullptr || shape->kind == ValueKind::kUnknown) {
      if (!pin_whole(k, u, choices, t, cap)) return false;
      continue;
    }
    auto leaf = first_open(k, shape);
    if (!leaf) {
      // Known shape with nothing open below: the store is inconsistent.
      return false;
    }
    if (!pin(k, *leaf, choices, t, cap)) return false;
  }
  return k.sat();
}

}  // namespace

std::optional<Valuation> sample_final(ConstraintSet& k,
                                      const std::vector<uint32_t>& us,
                                      ChoiceSource& choices, Trace& t,
                                      uint64_t cap) {
  if (!k.sat()) return std::nullopt;
  for (uint32_t u : us) {
    if (!pin(k, u, choices, t, cap)) return std::nullopt;
  }
  Valuation out;
  for (uint32_t u : us) out[u] = k.index(u);
  return out;
}

AttemptResult run_attempt(const surface::CompiledQuery& q,
                          ChoiceSource& choices, const Budget& budget) {
  EvalOptions options;
  options.fuel = budget.fuel;
  options.local_backtracking = budget.local_backtracking;
  options.prune = budget.prune;
  Evaluator ev(choices, options);
  AttemptResult out;
  ConstraintSet k = q.store;
  const bool ok = ev.match(*q.expr, nullptr, q.target_value(), k, out.trace);
  out.local_backtracks = ev.stats().local_backtracks;
  if (!ok || !k.sat()) return out;
  auto s = sample_final(k, q.ids(), choices, out.trace,
                        options.enumeration_cap);
  if (!s) return out;
  if (budget.recheck) {
    bool holds = false;
    try {
      ValuePtr v = pred_eval(*substitute_unknowns(q.expr, *s), budget.fuel);
      holds = values_equal(*v, *q.target_value());
    } catch (const RuntimeError&) {
      holds = false;
    }
    if (!holds) {
      out.recheck_failed = true;
      return out;
    }
  }
  out.valuation = std::move(s);
  return out;
}

GenReport run_query(const surface::CompiledQuery& q, uint64_t seed,
                    const Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  GenReport r;
  r.seed = seed;
  SplitMix64 seeds(seed);
  try {
    while (r.attempts < budget.max_attempts) {
      const uint64_t attempt_seed = seeds.next();
      RandomChoices choices(attempt_seed);
      ++r.attempts;
      AttemptResult a = run_attempt(q, choices, budget);
      r.local_backtracks += a.local_backtracks;
      if (a.valuation) {
        r.success = true;
        r.valuation = std::move(*a.valuation);
        r.trace = std::move(a.trace);
        r.attempt_seed = attempt_seed;
        break;
      }
      ++r.discards;
      if (a.recheck_failed) ++r.recheck_failures;
    }
    if (!r.success) r.failure = "exhausted";
  } catch (const FuelExhausted&) {
    r.success = false;
    r.failure = "fuel exhausted";
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

std::vector<GenReport> run_batch(const surface::CompiledQuery& q,
                                 uint64_t seed, size_t count,
                                 const Budget& budget, unsigned jobs) {
  std::vector<uint64_t> seeds(count);
  SplitMix64 root(seed);
  for (auto& s : seeds) s = root.next();
  std::vector<GenReport> out(count);
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) out[i] = run_query(q, seeds[i], budget);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  for (unsigned j = 0; j < jobs && j < count; ++j) {
    workers.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) {
        try {
          out[i] = run_query(q, seeds[i], budget);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
  return out;
}

std::optional<AttemptResult> replay(const surface::CompiledQuery& q,
                                    const TraceLine& line,
                                    const Budget& budget) {
  ReplayChoices choices(line.choices);
  AttemptResult a;
  try {
    a = run_attempt(q, choices, budget);
  } catch (const ContractViolation&) {
    return std::nullopt;  // the script ran out or disagreed with an arity
  }
  if (!a.valuation || !choices.finished()) return std::nullopt;
  return a;
}

std::string trace_line(const GenReport& r) {
  return format_trace_line(r.attempt_seed, r.trace);
}

}  // namespace luck
