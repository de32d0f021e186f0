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

#include "luck/support/random.h"

#include <string>

#include "luck/support/error.h"

namespace luck {

uint64_t SplitMix64::next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t SplitMix64::below(uint64_t n) {
  if (n == 0) throw ContractViolation("SplitMix64::below(0)");
  const uint64_t threshold = (0 - n) % n;
  for (;;) {
    const uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

SplitMix64 SplitMix64::split() { return SplitMix64(next()); }

uint32_t RandomChoices::pick(const uint64_t* weights, uint32_t n) {
  uint64_t total = 0;
  for (uint32_t i = 0; i < n; ++i) {
    if (weights[i] > UINT64_MAX - total) {
      throw RuntimeError("weights overflow");
    }
    total += weights[i];
  }
  if (total == 0) throw ContractViolation("pick with zero total weight");
  uint64_t r = rng_.below(total);
  for (uint32_t i = 0; i < n; ++i) {
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  return n - 1;
}

uint32_t RandomChoices::pick_uniform(uint32_t n) {
  return static_cast<uint32_t>(rng_.below(n));
}

uint32_t ReplayChoices::next(uint32_t n) {
  if (pos_ >= script_.size()) {
    throw ContractViolation("replay script exhausted");
  }
  auto [m, arity] = script_[pos_++];
  if (arity != n || m >= n) {
    throw ContractViolation("replay script mismatch at choice " +
                            std::to_string(pos_ - 1));
  }
  return m;
}

uint32_t ReplayChoices::pick(const uint64_t* weights, uint32_t n) {
  const uint32_t m = next(n);
  if (weights[m] == 0) {
    throw ContractViolation("replay picked a zero-weight branch");
  }
  return m;
}

uint32_t ReplayChoices::pick_uniform(uint32_t n) { return next(n); }

uint32_t EnumeratingChoices::next_allowed(const Step& s, uint32_t from) const {
  for (uint32_t i = from; i < s.arity; ++i) {
    if (s.weights.empty() || s.weights[i] != 0) return i;
  }
  return s.arity;
}

uint32_t EnumeratingChoices::pick(const uint64_t* weights, uint32_t n) {
  if (pos_ < path_.size()) {
    if (path_[pos_].arity != n) {
      throw ContractViolation("enumeration diverged: arity changed");
    }
    return path_[pos_++].index;
  }
  Step s{0, std::vector<uint64_t>(weights, weights + n), n};
  s.index = next_allowed(s, 0);
  if (s.index == n) throw ContractViolation("pick with zero total weight");
  path_.push_back(std::move(s));
  ++pos_;
  return path_.back().index;
}

uint32_t EnumeratingChoices::pick_uniform(uint32_t n) {
  if (pos_ < path_.size()) {
    if (path_[pos_].arity != n) {
      throw ContractViolation("enumeration diverged: arity changed");
    }
    return path_[pos_++].index;
  }
  path_.push_back(Step{0, {}, n});
  ++pos_;
  return 0;
}

bool EnumeratingChoices::advance() {
  path_.resize(pos_);
  pos_ = 0;
  while (!path_.empty()) {
    Step& s = path_.back();
    const uint32_t next = next_allowed(s, s.index + 1);
    if (next < s.arity) {
      s.index = next;
      return true;
    }
    path_.pop_back();
  }
  return false;
}

std::vector<std::pair<uint32_t, uint32_t>> EnumeratingChoices::taken() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (size_t i = 0; i < pos_; ++i) {
    out.emplace_back(path_[i].index, path_[i].arity);
  }
  return out;
}

std::vector<std::pair<uint64_t, uint64_t>>
EnumeratingChoices::taken_probabilities() const {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  for (size_t i = 0; i < pos_; ++i) {
    const Step& s = path_[i];
    if (s.weights.empty()) {
      out.emplace_back(1, s.arity);
    } else {
      uint64_t total = 0;
      for (uint64_t w : s.weights) total += w;
      out.emplace_back(s.weights[s.index], total);
    }
  }
  return out;
}

}  // namespace luck
