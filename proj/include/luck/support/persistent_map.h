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

#ifndef LUCK_SUPPORT_PERSISTENT_MAP_H_
#define LUCK_SUPPORT_PERSISTENT_MAP_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>

namespace luck {

// Copy-on-write map from dense 32-bit ids to values: a 16-ary trie.
// Copies share structure, so keeping many snapshots is cheap. Writes copy
// the path from the root to the touched leaf.
template <class V>
class PersistentIdMap {
 public:
  static constexpr unsigned kBits = 4;
  static constexpr unsigned kWidth = 1u << kBits;
  static constexpr uint32_t kMask = kWidth - 1;

  const V* find(uint32_t id) const {
    if (root_ == nullptr || id >= capacity(height_)) return nullptr;
    const void* node = root_.get();
    for (unsigned h = height_; h > 1; --h) {
      const Inner* inner = static_cast<const Inner*>(node);
      node = inner->kids[(id >> (kBits * (h - 1))) & kMask].get();
      if (node == nullptr) return nullptr;
    }
    const Leaf* leaf = static_cast<const Leaf*>(node);
    const uint32_t slot = id & kMask;
    return (leaf->present >> slot) & 1u ? &leaf->vals[slot] : nullptr;
  }

  bool contains(uint32_t id) const { return find(id) != nullptr; }

  void set(uint32_t id, V value) {
    while (id >= capacity(height_)) grow();
    bool added = false;
    root_ = set_rec(root_, height_, id, std::move(value), &added);
    if (added) ++size_;
  }

  void erase(uint32_t id) {
    if (find(id) == nullptr) return;
    root_ = erase_rec(root_, height_, id);
    --size_;
  }

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Visits entries in increasing id order.
  template <class F>
  void for_each(F&& f) const {
    if (height_ > 0) for_each_rec(root_.get(), height_, 0, f);
  }

  // Calls f(id, const V* in_a, const V* in_b) for every id whose entry
  // differs between a and b. Subtrees shared by both are skipped, so the
  // cost is proportional to the difference. Values compare with ==.
  template <class F>
  static void diff(const PersistentIdMap& a, const PersistentIdMap& b, F&& f) {
    unsigned h = a.height_ > b.height_ ? a.height_ : b.height_;
    if (h == 0) return;
    diff_rec(a.at_height(h), b.at_height(h), h, 0, f);
  }

  bool same_root(const PersistentIdMap& other) const {
    return root_ == other.root_;
  }

 private:
  struct Leaf {
    uint32_t present = 0;
    std::array<V, kWidth> vals{};
  };
  struct Inner {
    std::array<std::shared_ptr<const void>, kWidth> kids{};
  };

  static uint64_t capacity(unsigned h) {
    return h == 0 ? 0 : (uint64_t{1} << (kBits * h));
  }

  void grow() {
    if (height_ == 0) {
      height_ = 1;
      return;
    }
    if (root_ != nullptr) {
      auto inner = std::make_shared<Inner>();
      inner->kids[0] = root_;
      root_ = std::move(inner);
    }
    ++height_;
  }

  // The root viewed as a trie of height h >= height_.
  std::shared_ptr<const void> at_height(unsigned h) const {
    std::shared_ptr<const void> node = root_;
    if (node == nullptr) return node;
    for (unsigned cur = height_; cur < h; ++cur) {
      auto inner = std::make_shared<Inner>();
      inner->kids[0] = node;
      node = std::move(inner);
    }
    return node;
  }

  static std::shared_ptr<const void> set_rec(
      const std::shared_ptr<const void>& node, unsigned h, uint32_t id,
      V&& value, bool* added) {
    if (h == 1) {
      auto leaf = node ? std::make_shared<Leaf>(
                             *static_cast<const Leaf*>(node.get()))
                       : std::make_shared<Leaf>();
      const uint32_t slot = id & kMask;
      if (!((leaf->present >> slot) & 1u)) *added = true;
      leaf->present |= 1u << slot;
      leaf->vals[slot] = std::move(value);
      return leaf;
    }
    auto inner = node ? std::make_shared<Inner>(
                            *static_cast<const Inner*>(node.get()))
                      : std::make_shared<Inner>();
    const uint32_t slot = (id >> (kBits * (h - 1))) & kMask;
    inner->kids[slot] = set_rec(inner->kids[slot], h - 1, id,
                                std::move(value), added);
    return inner;
  }

  static std::shared_ptr<const void> erase_rec(
      const std::shared_ptr<const void>& node, unsigned h, uint32_t id) {
    if (h == 1) {
      auto leaf = std::make_shared<Leaf>(*static_cast<const Leaf*>(node.get()));
      const uint32_t slot = id & kMask;
      leaf->present &= ~(1u << slot);
      leaf->vals[slot] = V{};
      if (leaf->present == 0) return nullptr;
      return leaf;
    }
    auto inner = std::make_shared<Inner>(*static_cast<const Inner*>(node.get()));
    const uint32_t slot = (id >> (kBits * (h - 1))) & kMask;
    inner->kids[slot] = erase_rec(inner->kids[slot], h - 1, id);
    for (const auto& kid : inner->kids) {
      if (kid != nullptr) return inner;
    }
    return nullptr;
  }

  template <class F>
  static void for_each_rec(const void* node, unsigned h, uint32_t base, F& f) {
    if (node == nullptr) return;
    if (h == 1) {
      const Leaf* leaf = static_cast<const Leaf*>(node);
      for (uint32_t i = 0; i < kWidth; ++i) {
        if ((leaf->present >> i) & 1u) f(base | i, leaf->vals[i]);
      }
      return;
    }
    const Inner* inner = static_cast<const Inner*>(node);
    const unsigned shift = kBits * (h - 1);
    for (uint32_t i = 0; i < kWidth; ++i) {
      for_each_rec(inner->kids[i].get(), h - 1, base | (i << shift), f);
    }
  }

  template <class F>
  static void diff_rec(const std::shared_ptr<const void>& a,
                       const std::shared_ptr<const void>& b, unsigned h,
                       uint32_t base, F& f) {
    if (a == b) return;
    if (h == 1) {
      const Leaf* la = static_cast<const Leaf*>(a.get());
      const Leaf* lb = static_cast<const Leaf*>(b.get());
      for (uint32_t i = 0; i < kWidth; ++i) {
        const V* va = la && ((la->present >> i) & 1u) ? &la->vals[i] : nullptr;
        const V* vb = lb && ((lb->present >> i) & 1u) ? &lb->vals[i] : nullptr;
        if (va == nullptr && vb == nullptr) continue;
        if (va != nullptr && vb != nullptr && *va == *vb) continue;
        f(base | i, va, vb);
      }
      return;
    }
    const Inner* ia = static_cast<const Inner*>(a.get());
    const Inner* ib = static_cast<const Inner*>(b.get());
    static const std::shared_ptr<const void> kNull;
    const unsigned shift = kBits * (h - 1);
    for (uint32_t i = 0; i < kWidth; ++i) {
      diff_rec(ia ? ia->kids[i] : kNull, ib ? ib->kids[i] : kNull, h - 1,
               base | (i << shift), f);
    }
  }

  std::shared_ptr<const void> root_;
  unsigned height_ = 0;
  size_t size_ = 0;
};

}  // namespace luck

#endif  // LUCK_SUPPORT_PERSISTENT_MAP_H_
