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

#include "luck/driver/report.h"

#include <json.hpp>

namespace luck {

std::string report_json(const surface::CompiledQuery& q, const GenReport& r,
                        size_t index) {
  nlohmann::ordered_json j;
  j["index"] = index;
  j["query"] = q.text;
  j["success"] = r.success;
  if (r.success) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (size_t i = 0; i < q.unknowns.size(); ++i) {
      values[q.unknowns[i].name] = q.render_value(i, r.valuation);
    }
    j["valuation"] = values;
    nlohmann::ordered_json choices = nlohmann::ordered_json::array();
    for (const auto& [m, n] : r.trace.script()) choices.push_back({m, n});
    j["trace"] = choices;
    j["q"] = r.trace.probability().get_str();
  } else {
    j["valuation"] = nullptr;
    j["failure"] = r.failure;
  }
  j["attempts"] = r.attempts;
  j["local_backtracks"] = r.local_backtracks;
  j["discards"] = r.discards;
  j["recheck_failures"] = r.recheck_failures;
  j["elapsed_ms"] = r.elapsed_ms;
  j["seed"] = r.seed;
  j["attempt_seed"] = r.attempt_seed;
  return j.dump();
}

}  // namespace luck
