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

#ifndef LUCK_CONSTRAINTS_INTERVAL_SET_H_
#define LUCK_CONSTRAINTS_INTERVAL_SET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace luck {

// A finite set of integers as sorted, disjoint, non-adjacent inclusive
// intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet range(int64_t lo, int64_t hi);
  static IntervalSet singleton(int64_t v) { return range(v, v); }

  bool empty() const { return parts_.empty(); }
  // Number of elements, saturating at UINT64_MAX.
  uint64_t size() const;
  int64_t min() const { return parts_.front().first; }
  int64_t max() const { return parts_.back().second; }
  bool contains(int64_t v) const;
  std::optional<int64_t> singleton_value() const;
  // The i-th smallest element; i < size().
  int64_t nth(uint64_t i) const;

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet remove(int64_t v) const;
  IntervalSet at_most(int64_t v) const;
  IntervalSet at_least(int64_t v) const;
  // {x + delta}, clipped to the int64 range.
  IntervalSet shift(int64_t delta) const;

  const std::vector<std::pair<int64_t, int64_t>>& parts() const {
    return parts_;
  }
  bool operator==(const IntervalSet& other) const = default;
  std::string to_string() const;

 private:
  explicit IntervalSet(std::vector<std::pair<int64_t, int64_t>> parts)
      : parts_(std::move(parts)) {}
  static IntervalSet normalized(std::vector<std::pair<int64_t, int64_t>> p);

  std::vector<std::pair<int64_t, int64_t>> parts_;
};

}  // namespace luck

#endif  // LUCK_CONSTRAINTS_INTERVAL_SET_H_
