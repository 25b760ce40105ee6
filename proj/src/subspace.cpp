// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/subspace.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace lgp {

std::uint32_t add_codes(std::uint32_t x, std::uint32_t y, std::uint32_t p) {
  std::uint32_t r = 0, mul = 1;
  for (int i = 0; i < 4; ++i) {
    r += ((x % p + y % p) % p) * mul;
    x /= p;
    y /= p;
    mul *= p;
  }
  return r;
}

std::uint32_t scale_code(std::uint32_t x, std::uint32_t s, std::uint32_t p) {
  std::uint32_t r = 0, mul = 1;
  for (int i = 0; i < 4; ++i) {
    r += ((x % p) * s % p) * mul;
    x /= p;
    mul *= p;
  }
  return r;
}

std::array<std::uint64_t, 4> decode_code(std::uint32_t code, std::uint32_t p) {
  std::array<std::uint64_t, 4> e{};
  for (int i = 0; i < 4; ++i) {
    e[i] = code % p;
    code /= p;
  }
  return e;
}

std::uint32_t encode_code(const std::array<std::uint64_t, 4>& e, std::uint32_t p) {
  std::uint32_t r = 0, mul = 1;
  for (int i = 0; i < 4; ++i) {
    r += static_cast<std::uint32_t>(e[i] % p) * mul;
    mul *= p;
  }
  return r;
}

std::vector<std::uint32_t> span_of(const std::vector<std::uint32_t>& basis, std::uint32_t p) {
  std::vector<std::uint32_t> out{0};
  for (auto b : basis) {
    std::vector<std::uint32_t> next;
    next.reserve(out.size() * p);
    for (std::uint32_t s = 0; s < p; ++s) {
      std::uint32_t sb = scale_code(b, s, p);
      for (auto c : out) next.push_back(add_codes(c, sb, p));
    }
    out.swap(next);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<Subspace> rref_subspaces(std::uint32_t p) {
  std::vector<Subspace> out;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<int> pivots;
    for (int c = 0; c < 4; ++c)
      if (mask & (1u << c)) pivots.push_back(c);
    const std::size_t r = pivots.size();
    // Free slots: row i, column c > pivot_i that is not a pivot column.
    std::vector<std::pair<int, int>> free;
    for (std::size_t i = 0; i < r; ++i)
      for (int c = pivots[i] + 1; c < 4; ++c)
        if (!(mask & (1u << c))) free.emplace_back(static_cast<int>(i), c);
    std::uint64_t combos = 1;
    for (std::size_t f = 0; f < free.size(); ++f) combos *= p;
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::vector<std::array<std::uint64_t, 4>> rows(r, std::array<std::uint64_t, 4>{0, 0, 0, 0});
      for (std::size_t i = 0; i < r; ++i) rows[i][pivots[i]] = 1;
      std::uint64_t c = code;
      for (const auto& [i, col] : free) {
        rows[i][col] = c % p;
        c /= p;
      }
      Subspace s;
      for (const auto& row : rows) s.basis.push_back(encode_code(row, p));
      s.codes = span_of(s.basis, p);
      out.push_back(std::move(s));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Subspace& a, const Subspace& b) { return a.basis.size() < b.basis.size(); });
  return out;
}

}  // namespace

const std::vector<Subspace>& all_subspaces(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<Subspace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, rref_subspaces(p)).first;
  return it->second;
}

std::vector<std::uint32_t> coset_reps(const Subspace& w, std::uint32_t p) {
  std::vector<std::uint32_t> basis;
  std::vector<std::uint32_t> all_basis = w.basis;
  std::vector<std::uint32_t> span = w.codes;
  const std::uint32_t total = p * p * p * p;
  for (std::uint32_t v = 1; v < total && span.size() < total; ++v) {
    if (std::binary_search(span.begin(), span.end(), v)) continue;
    basis.push_back(v);
    all_basis.push_back(v);
    span = span_of(all_basis, p);
  }
  return span_of(basis, p);
}

}  // namespace lgp
