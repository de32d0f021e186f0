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

// luck FILE QUERY [options]: generate valuations for the unknowns of QUERY.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "luck/driver/driver.h"
#include "luck/driver/report.h"
#include "luck/support/error.h"
#include "luck/surface/frontend.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitExhausted = 2;

bool parse_bound(const std::string& text, std::pair<int64_t, int64_t>& out) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return false;
  try {
    size_t used = 0;
    const std::string lo = text.substr(0, dots);
    const std::string hi = text.substr(dots + 2);
    out.first = std::stoll(lo, &used);
    if (used != lo.size()) return false;
    out.second = std::stoll(hi, &used);
    if (used != hi.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return out.first <= out.second;
}

uint64_t default_seed() {
  if (const char* env = std::getenv("LUCK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "luck: ignoring malformed LUCK_SEED\n";
    }
  }
  std::random_device rd;
  return (uint64_t{rd()} << 32) ^ rd();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate values satisfying a predicate written in a Luck program."};
  std::string file;
  std::string query;
  size_t count = 1;
  std::optional<uint64_t> seed;
  std::string int_bound;
  std::optional<uint32_t> depth;
  std::string mode = "terms";
  unsigned jobs = 1;
  luck::Budget budget;
  bool no_local = false;
  bool no_prune = false;
  bool no_recheck = false;
  bool json = false;
  bool trace = false;
  bool histogram = false;
  std::string replay_line;

  app.add_option("file", file, "program (.luck)")->required();
  app.add_option("query", query, "query, e.g. \"bst 10 0 42 u = True\"")
      ->required();
  app.add_option("--count,-n", count, "number of valuations")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "RNG seed (falls back to LUCK_SEED)");
  app.add_option("--int-bound", int_bound,
                 "domain lo..hi of integer unknowns");
  app.add_option("--depth", depth, "most folds in a recursive unknown");
  app.add_option("--mode", mode, "terms | json | trace | histogram")
      ->check(CLI::IsMember({"terms", "json", "trace", "histogram"}));
  app.add_flag("--json", json, "same as --mode json");
  app.add_flag("--trace", trace, "same as --mode trace");
  app.add_flag("--histogram", histogram, "same as --mode histogram");
  app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--attempts", budget.max_attempts,
                 "global retries per valuation");
  app.add_option("--fuel", budget.fuel, "evaluation steps per attempt");
  app.add_flag("--no-local-backtracking", no_local,
               "restart the whole query when a choice fails");
  app.add_flag("--no-prune", no_prune,
               "explore constant case arms that cannot match");
  app.add_flag("--no-recheck", no_recheck,
               "skip the predicate check of each result");
  app.add_option("--replay", replay_line,
                 "rerun the attempt of a trace line printed by --mode trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }
  if (json) mode = "json";
  if (trace) mode = "trace";
  if (histogram) mode = "histogram";
  budget.local_backtracking = !no_local;
  budget.prune = !no_prune;
  budget.recheck = !no_recheck;

  luck::surface::QueryBounds bounds;
  if (!int_bound.empty()) {
    std::pair<int64_t, int64_t> b;
    if (!parse_bound(int_bound, b)) {
      std::cerr << "luck: --int-bound expects lo..hi with lo <= hi\n";
      return kExitBadInput;
    }
    bounds.ints = b;
  }
  bounds.depth = depth;

  luck::surface::CompiledQuery q;
  try {
    auto program = luck::surface::load_program_file(file);
    q = luck::surface::compile_query(program, query, bounds);
  } catch (const luck::LuckError& e) {
    std::cerr << "luck: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    if (!replay_line.empty()) {
      const luck::TraceLine line = luck::parse_trace_line(replay_line);
      auto a = luck::replay(q, line, budget);
      if (!a) {
        std::cerr << "luck: the trace does not replay to a result\n";
        return kExitExhausted;
      }
      if (a->trace.probability() != line.q) {
        std::cerr << "luck: replayed probability " << a->trace.probability()
                  << " differs from " << line.q << "\n";
        return kExitExhausted;
      }
      std::cout << q.render(*a->valuation) << "\n";
      return kExitOk;
    }

    const uint64_t base = seed ? *seed : default_seed();
    if (!seed && !std::getenv("LUCK_SEED")) {
      std::cerr << "luck: seed " << base << "\n";
    }
    const auto reports = luck::run_batch(q, base, count, budget, jobs);
    size_t failures = 0;
    std::map<std::string, size_t> buckets;
    for (size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      if (mode == "json") {
        std::cout << luck::report_json(q, r, i) << "\n";
      }
      if (!r.success) {
        ++failures;
        std::cerr << "luck: query " << i << ": " << r.failure << " after "
                  << r.attempts << " attempts\n";
        continue;
      }
      if (mode == "terms") {
        std::cout << q.render(r.valuation) << "\n";
      } else if (mode == "trace") {
        std::cout << luck::trace_line(r) << "\n";
      } else if (mode == "histogram") {
        ++buckets[q.render(r.valuation)];
      }
    }
    if (mode == "histogram") {
      std::vector<std::pair<std::string, size_t>> rows(buckets.begin(),
                                                       buckets.end());
      std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.second > b.second;
      });
      const size_t total = reports.size();
      for (const auto& [term, n] : rows) {
        std::printf("%8zu  %6.2f%%  %s\n", n, 100.0 * n / total, term.c_str());
      }
      if (failures) {
        std::printf("%8zu  %6.2f%%  <failed>\n", failures,
                    100.0 * failures / total);
      }
    }
    return failures == 0 ? kExitOk : kExitExhausted;
  } catch (const luck::LuckError& e) {
    std::cerr << "luck: " << e.what() << "\n";
    return kExitExhausted;
  }
}
