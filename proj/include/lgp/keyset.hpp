// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace lgp {

// Open-addressing set of nonzero 64-bit keys. Zero marks an empty slot, which
// is safe for packed matrices because the zero matrix is never in a group.
class KeySet {
 public:
  explicit KeySet(std::size_t expected = 16) { reset(expected); }

  void reset(std::size_t expected) {
    std::size_t cap = 32;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, 0);
    mask_ = cap - 1;
    size_ = 0;
  }

  bool contains(std::uint64_t key) const noexcept {
    std::size_t i = slot(key);
    while (slots_[i] != 0) {
      if (slots_[i] == key) return true;
      i = (i + 1) & mask_;
    }
    return false;
  }

  // Returns true when the key was not already present.
  bool insert(std::uint64_t key) {
    if ((size_ + 1) * 2 > slots_.size()) grow();
    std::size_t i = slot(key);
    while (slots_[i] != 0) {
      if (slots_[i] == key) return false;
      i = (i + 1) & mask_;
    }
    slots_[i] = key;
    ++size_;
    return true;
  }

  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t slot(std::uint64_t key) const noexcept {
    key ^= key >> 29;
    key *= 0xbf58476d1ce4e5b9ULL;
    key ^= key >> 32;
    return static_cast<std::size_t>(key) & mask_;
  }

  void grow() {
    std::vector<std::uint64_t> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, 0);
    mask_ = slots_.size() - 1;
    size_ = 0;
    for (auto k : old) {
      if (k != 0) insert(k);
    }
  }

  std::vector<std::uint64_t> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

}  // namespace lgp
