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

#ifndef LUCK_SUPPORT_RANDOM_H_
#define LUCK_SUPPORT_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace luck {

// SplitMix64: small, seedable, splittable. Identical streams on every
// platform, which the trace format relies on.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next();
  // Uniform in [0, n) without modulo bias. n must be positive.
  uint64_t below(uint64_t n);
  // An independent generator; advances this one by one step.
  SplitMix64 split();

 private:
  uint64_t state_;
};

// Where the evaluators get their decisions from. One call per decision.
class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;
  // Index in [0, n) drawn with probability weights[i] / sum(weights).
  // Zero-weight entries are never returned; the sum must be positive.
  virtual uint32_t pick(const uint64_t* weights, uint32_t n) = 0;
  // Index in [0, n) drawn uniformly.
  virtual uint32_t pick_uniform(uint32_t n) = 0;
};

class RandomChoices final : public ChoiceSource {
 public:
  explicit RandomChoices(uint64_t seed) : rng_(seed) {}
  uint32_t pick(const uint64_t* weights, uint32_t n) override;
  uint32_t pick_uniform(uint32_t n) override;

 private:
  SplitMix64 rng_;
};

// Replays a recorded list of (index, arity) pairs.
class ReplayChoices final : public ChoiceSource {
 public:
  explicit ReplayChoices(std::vector<std::pair<uint32_t, uint32_t>> script)
      : script_(std::move(script)) {}
  uint32_t pick(const uint64_t* weights, uint32_t n) override;
  uint32_t pick_uniform(uint32_t n) override;
  bool finished() const { return pos_ == script_.size(); }

 private:
  uint32_t next(uint32_t n);

  std::vector<std::pair<uint32_t, uint32_t>> script_;
  size_t pos_ = 0;
};

// Walks every choice sequence in depth-first order. Run the computation,
// then call advance(); stop when it returns false.
class EnumeratingChoices final : public ChoiceSource {
 public:
  uint32_t pick(const uint64_t* weights, uint32_t n) override;
  uint32_t pick_uniform(uint32_t n) override;
  // Moves to the next unexplored sequence; false once all are done.
  bool advance();
  // The (index, arity) pairs taken in the current run.
  std::vector<std::pair<uint32_t, uint32_t>> taken() const;
  // The probability (num, den) of each choice taken in the current run.
  std::vector<std::pair<uint64_t, uint64_t>> taken_probabilities() const;

 private:
  struct Step {
    uint32_t index;
    std::vector<uint64_t> weights;  // empty for uniform picks
    uint32_t arity;
  };
  uint32_t next_allowed(const Step& s, uint32_t from) const;

  std::vector<Step> path_;
  size_t pos_ = 0;
};

}  // namespace luck

#endif  // LUCK_SUPPORT_RANDOM_H_
