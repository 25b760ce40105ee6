// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "lgp/group.hpp"

namespace lgp {

// Negative fundamental discriminant of an imaginary quadratic field.
class ImagQuadDisc {
 public:
  // Throws kInvalidArgument unless d is a negative fundamental discriminant.
  explicit ImagQuadDisc(std::int64_t d);
  std::int64_t value() const noexcept { return d_; }
  // Number of roots of unity in the maximal order: 6, 4 or 2.
  unsigned unit_count() const noexcept;

 private:
  std::int64_t d_;
};

bool is_fundamental_discriminant(std::int64_t d) noexcept;
// (d / p) with the usual convention at 2.
int kronecker_symbol(std::int64_t d, std::uint64_t p);

// Field hypotheses asserted by the caller; no number field is ever built.
struct FieldFlags {
  bool f_in_k = false;              // the CM field sits inside K
  bool sqrt_ell_in_k = false;       // Q(sqrt(l)) inside K
  bool kf_eq_sqrt_neg_ell = false;  // KF = K(sqrt(-l))
  bool sqrt2_in_k = false;
  bool kf_eq_sqrt_neg2 = false;
  std::uint64_t deg_k = 1;
  std::uint64_t index_d = 1;  // [KF : H_F]
};

// "k=v,k=v" with the flag names above; booleans accept 0/1/true/false.
FieldFlags parse_field_flags(const std::string& text);

std::uint64_t cartan_order(std::uint64_t ell, unsigned n, const ImagQuadDisc& d);
// Invertible [[a, b d(1-d)/4], [b, a + b d]] mod p^n.
MatGroup build_cartan(const ImagQuadDisc& d, const PrimePowerModulus& mod);
// [[1, d], [0, -1]], complex conjugation in the same basis.
Mat2 conjugation_element(const ImagQuadDisc& d, const PrimePowerModulus& mod);
Mat2 cartan_element(const ImagQuadDisc& d, std::uint64_t a, std::uint64_t b, const PrimePowerModulus& mod);

enum class Splitting { kSplit, kInert, kRamified };
const char* splitting_name(Splitting s) noexcept;
Splitting splitting_of(std::uint64_t ell, const ImagQuadDisc& d);

enum class CmCase { kRamifiedGlobal = 1, kSplit = 2, kIndexBound = 3 };

enum class SplitBullet {
  kNone,
  kCmFieldInK,      // global isogeny
  kOneModFour,      // exceptional
  kThreeModFour,    // exceptional
  kSmallTwoPower,   // 2 or 4, isogeny up to isogeny
  kTwoWithSqrt2,    // exceptional
};
const char* bullet_name(SplitBullet b) noexcept;

struct CmCaseReport {
  std::uint64_t ell = 0;
  unsigned n = 0;
  std::int64_t disc = 0;
  Splitting splitting = Splitting::kInert;
  CmCase which = CmCase::kIndexBound;
  SplitBullet bullet = SplitBullet::kNone;
  bool locally_everywhere = false;  // possible under the flags
  bool global_isogeny = false;
  bool exceptional = false;
  std::uint64_t index_bound = 0;  // case 3 piecewise row(s), max over applicable rows
  double universal_bound = 0;     // l^(n/4)
};

CmCaseReport classify_prime_power_cm(std::uint64_t ell, unsigned n, const ImagQuadDisc& d, const FieldFlags& flags);

// Index in the full Cartan group of the subgroup of elements whose
// characteristic polynomial has a root, found by exhaustive scan.
// Returns 0 when those elements do not form a subgroup.
std::uint64_t exhaustive_root_index(std::uint64_t ell, unsigned n, const ImagQuadDisc& d);

struct ABCFactorization {
  std::uint64_t A = 1, B = 1, C = 1;
  std::uint64_t A_bound = 0;
  bool a_within_bound = true;
};

ABCFactorization abc_factorization(std::uint64_t N, const ImagQuadDisc& d, const FieldFlags& flags);

constexpr std::uint64_t lift_exceptional_prime_bound(std::uint64_t degree_k) { return 6 * degree_k + 1; }

}  // namespace lgp
