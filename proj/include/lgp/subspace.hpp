// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace lgp {

// Vectors of M2(F_p) = F_p^4 are coded as a + p b + p^2 c + p^3 d.
struct Subspace {
  std::vector<std::uint32_t> codes;  // sorted
  std::vector<std::uint32_t> basis;
};

std::uint32_t add_codes(std::uint32_t x, std::uint32_t y, std::uint32_t p);
std::uint32_t scale_code(std::uint32_t x, std::uint32_t s, std::uint32_t p);
std::array<std::uint64_t, 4> decode_code(std::uint32_t code, std::uint32_t p);
std::uint32_t encode_code(const std::array<std::uint64_t, 4>& e, std::uint32_t p);
std::vector<std::uint32_t> span_of(const std::vector<std::uint32_t>& basis, std::uint32_t p);
// Every subspace of F_p^4, listed by reduced row echelon form. Cached.
const std::vector<Subspace>& all_subspaces(std::uint32_t p);
// Representatives of M2(F_p) / W.
std::vector<std::uint32_t> coset_reps(const Subspace& w, std::uint32_t p);

}  // namespace lgp
