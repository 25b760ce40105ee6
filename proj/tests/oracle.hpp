// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

// Small brute-force helpers shared by the unit tests. Deliberately naive and
// independent of the library's own arithmetic.
#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using M = std::array<std::int64_t, 4>;

inline std::int64_t md(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

inline M mul(const M& x, const M& y, std::int64_t m) {
  return {md(x[0] * y[0] + x[1] * y[2], m), md(x[0] * y[1] + x[1] * y[3], m), md(x[2] * y[0] + x[3] * y[2], m),
          md(x[2] * y[1] + x[3] * y[3], m)};
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return b == 0 ? (a < 0 ? -a : a) : gcd(b, a % b); }

// All primitive vectors up to unit scaling, as sorted canonical pairs.
inline std::vector<std::pair<std::int64_t, std::int64_t>> lines(std::int64_t p, std::int64_t m) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t x = 0; x < m; ++x)
    for (std::int64_t y = 0; y < m; ++y) {
      if (x % p == 0 && y % p == 0) continue;
      std::pair<std::int64_t, std::int64_t> best{m, m};
      for (std::int64_t u = 1; u < m; ++u) {
        if (u % p == 0) continue;
        best = std::min(best, {md(u * x, m), md(u * y, m)});
      }
      out.insert(best);
    }
  return {out.begin(), out.end()};
}

inline bool fixes(const M& a, std::int64_t x, std::int64_t y, std::int64_t p, std::int64_t m) {
  const std::int64_t nx = md(a[0] * x + a[1] * y, m), ny = md(a[2] * x + a[3] * y, m);
  for (std::int64_t l = 0; l < m; ++l)
    if (md(l * x - nx, m) == 0 && md(l * y - ny, m) == 0) return true;
  (void)p;
  return false;
}

inline bool has_root(std::int64_t b, std::int64_t c, std::int64_t m) {
  for (std::int64_t x = 0; x < m; ++x)
    if (md(x * x + b * x + c, m) == 0) return true;
  return false;
}

// Closure by breadth-first multiplication.
inline std::set<M> close(const std::vector<M>& gens, std::int64_t m) {
  std::set<M> seen{{1, 0, 0, 1}};
  std::vector<M> frontier{{1, 0, 0, 1}};
  while (!frontier.empty()) {
    std::vector<M> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        M y = mul(x, g, m);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return seen;
}

}  // namespace oracle
