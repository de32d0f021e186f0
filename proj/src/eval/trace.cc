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

#include "luck/eval/trace.h"

#include <regex>
#include <sstream>

#include "luck/support/error.h"

namespace luck {

void Trace::add(Choice c) {
  if (c.arity == 0 || c.index >= c.arity || c.num == 0 || c.num > c.den) {
    throw ContractViolation("malformed choice");
  }
  choices_.push_back(c);
}

void Trace::append(const Trace& other) {
  choices_.insert(choices_.end(), other.choices_.begin(),
                  other.choices_.end());
}

mpq_class Trace::probability() const {
  mpq_class q(1);
  for (const Choice& c : choices_) {
    mpz_class num, den;
    mpz_import(num.get_mpz_t(), 1, -1, sizeof c.num, 0, 0, &c.num);
    mpz_import(den.get_mpz_t(), 1, -1, sizeof c.den, 0, 0, &c.den);
    mpq_class f(num, den);
    f.canonicalize();
    q *= f;
  }
  return q;
}

std::vector<std::pair<uint32_t, uint32_t>> Trace::script() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  out.reserve(choices_.size());
  for (const Choice& c : choices_) out.emplace_back(c.index, c.arity);
  return out;
}

std::string Trace::choices_string() const {
  std::string out = "[";
  for (size_t i = 0; i < choices_.size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(choices_[i].index) + "," +
           std::to_string(choices_[i].arity) + ")";
  }
  return out + "]";
}

std::string format_trace_line(uint64_t seed, const Trace& trace) {
  mpq_class q = trace.probability();
  return "seed=" + std::to_string(seed) +
         " choices=" + trace.choices_string() +
         " q=" + q.get_num().get_str() + "/" + q.get_den().get_str();
}

TraceLine parse_trace_line(const std::string& line) {
  static const std::regex whole(
      R"(^\s*seed=(\d+)\s+choices=\[((?:\(\d+,\d+\)(?:,\(\d+,\d+\))*)?)\]\s+q=(\d+)/(\d+)\s*$)");
  static const std::regex pair(R"(\((\d+),(\d+)\))");
  std::smatch m;
  if (!std::regex_match(line, m, whole)) {
    throw LuckError("malformed trace line: " + line);
  }
  TraceLine out;
  try {
    out.seed = std::stoull(m[1].str());
    const std::string body = m[2].str();
    for (auto it = std::sregex_iterator(body.begin(), body.end(), pair);
         it != std::sregex_iterator(); ++it) {
      out.choices.emplace_back(std::stoul((*it)[1].str()),
                               std::stoul((*it)[2].str()));
    }
    out.q = mpq_class(mpz_class(m[3].str()), mpz_class(m[4].str()));
  } catch (const std::exception&) {
    throw LuckError("malformed trace line: " + line);
  }
  if (out.q.get_den() == 0) throw LuckError("zero denominator in trace");
  out.q.canonicalize();
  return out;
}

}  // namespace luck
