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

#include "luck/constraints/interval_set.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "luck/support/error.h"

namespace luck {
namespace {

int64_t clip(__int128 v) {
  if (v > std::numeric_limits<int64_t>::max()) {
    return std::numeric_limits<int64_t>::max();
  }
  if (v < std::numeric_limits<int64_t>::min()) {
    return std::numeric_limits<int64_t>::min();
  }
  return static_cast<int64_t>(v);
}

}  // namespace

IntervalSet IntervalSet::range(int64_t lo, int64_t hi) {
  if (lo > hi) return IntervalSet();
  return IntervalSet({{lo, hi}});
}

IntervalSet IntervalSet::normalized(std::vector<std::pair<int64_t, int64_t>> p) {
  std::sort(p.begin(), p.end());
  std::vector<std::pair<int64_t, int64_t>> out;
  for (const auto& iv : p) {
    if (iv.first > iv.second) continue;
    if (!out.empty() &&
        static_cast<__int128>(iv.first) <=
            static_cast<__int128>(out.back().second) + 1) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return IntervalSet(std::move(out));
}

uint64_t IntervalSet::size() const {
  unsigned __int128 total = 0;
  for (const auto& [lo, hi] : parts_) {
    total += static_cast<unsigned __int128>(static_cast<__int128>(hi) -
                                            static_cast<__int128>(lo) + 1);
    if (total >= std::numeric_limits<uint64_t>::max()) {
      return std::numeric_limits<uint64_t>::max();
    }
  }
  return static_cast<uint64_t>(total);
}

bool IntervalSet::contains(int64_t v) const {
  auto it = std::upper_bound(
      parts_.begin(), parts_.end(), v,
      [](int64_t x, const std::pair<int64_t, int64_t>& iv) {
        return x < iv.first;
      });
  if (it == parts_.begin()) return false;
  --it;
  return v <= it->second;
}

std::optional<int64_t> IntervalSet::singleton_value() const {
  if (parts_.size() == 1 && parts_[0].first == parts_[0].second) {
    return parts_[0].first;
  }
  return std::nullopt;
}

int64_t IntervalSet::nth(uint64_t i) const {
  for (const auto& [lo, hi] : parts_) {
    unsigned __int128 len = static_cast<unsigned __int128>(
        static_cast<__int128>(hi) - static_cast<__int128>(lo) + 1);
    if (i < len) return clip(static_cast<__int128>(lo) + i);
    i -= static_cast<uint64_t>(len);
  }
  throw ContractViolation("IntervalSet::nth out of range");
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<std::pair<int64_t, int64_t>> out;
  size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    int64_t lo = std::max(parts_[i].first, other.parts_[j].first);
    int64_t hi = std::min(parts_[i].second, other.parts_[j].second);
    if (lo <= hi) out.emplace_back(lo, hi);
    if (parts_[i].second < other.parts_[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<std::pair<int64_t, int64_t>> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return normalized(std::move(all));
}

IntervalSet IntervalSet::remove(int64_t v) const {
  if (!contains(v)) return *this;
  std::vector<std::pair<int64_t, int64_t>> out;
  for (const auto& [lo, hi] : parts_) {
    if (v < lo || v > hi) {
      out.emplace_back(lo, hi);
      continue;
    }
    if (lo < v) out.emplace_back(lo, v - 1);
    if (v < hi) out.emplace_back(v + 1, hi);
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::at_most(int64_t v) const {
  std::vector<std::pair<int64_t, int64_t>> out;
  for (const auto& [lo, hi] : parts_) {
    if (lo > v) break;
    out.emplace_back(lo, std::min(hi, v));
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::at_least(int64_t v) const {
  std::vector<std::pair<int64_t, int64_t>> out;
  for (const auto& [lo, hi] : parts_) {
    if (hi < v) continue;
    out.emplace_back(std::max(lo, v), hi);
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::shift(int64_t delta) const {
  std::vector<std::pair<int64_t, int64_t>> out;
  out.reserve(parts_.size());
  for (const auto& [lo, hi] : parts_) {
    out.emplace_back(clip(static_cast<__int128>(lo) + delta),
                     clip(static_cast<__int128>(hi) + delta));
  }
  return normalized(std::move(out));
}

std::string IntervalSet::to_string() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) os << ", ";
    if (parts_[i].first == parts_[i].second) {
      os << parts_[i].first;
    } else {
      os << parts_[i].first << ".." << parts_[i].second;
    }
  }
  os << "}";
  return os.str();
}

}  // namespace luck
