// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lgp/group.hpp"

namespace lgp {

// The kernel-type group {[[r,s],[p^(2m) s, t]] : r = t mod p^(2m)} mod p^(2m+1).
MatGroup build_K_group(std::uint64_t ell, unsigned m);
// {[[r,s],[p^(2m) e s, e t]] : r = t mod p^(m+1), e = +-1} mod p^(2m+1).
MatGroup build_R_group(std::uint64_t ell, unsigned m);
std::vector<LineClass> simultaneous_eigenlines_K(std::uint64_t ell, unsigned m);

enum class XKVerdict { kBorelContained, kLiftExceptional, kDiscViolation };
const char* verdict_name(XKVerdict v) noexcept;

struct XKClassification {
  XKVerdict verdict = XKVerdict::kLiftExceptional;
  std::optional<LineClass> fixed_line;  // borel-contained
  std::optional<Mat2> bad_element;      // disc-violation
  std::size_t group_order = 0;
};

// Checks the preconditions (Borel mod p^(2m), radical mod p, not Cartan mod p)
// and throws kNotPotentiallyExceptional when they fail.
void check_potentially_exceptional(const Mat2& x, std::uint64_t ell, unsigned m);
// Structural verdict from the closed group <X, K>.
XKClassification classify_XK(const Mat2& x, std::uint64_t ell, unsigned m);
// Same, reusing a prebuilt K group.
XKClassification classify_XK(const Mat2& x, const MatGroup& k_group);
// The closed-form test: diagonal entries opposite mod p^(m+1).
bool diagonals_opposite(const Mat2& x, std::uint64_t ell, unsigned m);

struct Normalization {
  std::uint64_t mu = 0;
  Mat2 conjugator;  // M = [[1, mu], [0, 1]]
  MatGroup image;   // M^-1 <X, K> M, contained in R
};

Normalization normalize_to_R(const Mat2& x, std::uint64_t ell, unsigned m);

// Diagonal and antidiagonal powers of a generator with matching parity,
// pulled back to level p^n.
MatGroup build_H_exc(std::uint64_t ell, unsigned n);
// Same shape mod 25 with an order-4 lift of the generator, no kernel.
MatGroup build_H_exc_teichmuller(unsigned n);

struct SubrepReport {
  std::size_t subspaces_total = 0;       // all subspaces of M2(F_5)
  std::size_t stable_brute_force = 0;    // conjugation-stable, by direct check
  std::size_t stable_isotypic = 0;       // direct sums of the four isotypic lines
  bool lattices_agree = false;
  std::vector<std::string> maximal_admissible;  // names like "A+B"
  bool abc_is_inadmissible = false;
  std::vector<unsigned> genera;  // genus of (1 + 5J) * H~ mod 25 per maximal J
  bool claim_holds = false;
};

SubrepReport verify_D4_subrep_claim();

// Sweep over every X mod p^(2m+1) that is radical mod p and Borel mod p^(2m).
struct UpthmSweep {
  std::size_t candidates = 0;
  std::size_t lift_exceptional = 0;
  std::size_t borel = 0;
  std::size_t disc_violation = 0;
  std::size_t mismatches = 0;
  std::size_t not_conjugate_into_R = 0;
  std::size_t distinct_groups = 0;
};

UpthmSweep sweep_upthm(std::uint64_t ell, unsigned m);

}  // namespace lgp
