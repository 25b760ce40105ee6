// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "lgp/cm.hpp"
#include "oracle.hpp"

using namespace lgp;

namespace {

// Invertible pairs (a, b) in the Cartan model, counted directly.
std::uint64_t count_units(std::int64_t p, unsigned n, std::int64_t d) {
  std::int64_t m = 1;
  for (unsigned i = 0; i < n; ++i) m *= p;
  const std::int64_t top = d * (1 - d) / 4;
  std::uint64_t c = 0;
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = 0; b < m; ++b) {
      const std::int64_t det = a * (a + b * d) - b * b * top;
      c += oracle::md(det, p) != 0;
    }
  return c;
}

}  // namespace

TEST_CASE("discriminants") {
  CHECK(is_fundamental_discriminant(-3));
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(-8));
  CHECK(is_fundamental_discriminant(-20));
  CHECK_FALSE(is_fundamental_discriminant(-12));
  CHECK_FALSE(is_fundamental_discriminant(-5));
  CHECK_FALSE(is_fundamental_discriminant(5));
  CHECK_THROWS_AS(ImagQuadDisc(-16), Error);
  CHECK(ImagQuadDisc(-3).unit_count() == 6);
  CHECK(ImagQuadDisc(-4).unit_count() == 4);
  CHECK(ImagQuadDisc(-7).unit_count() == 2);
  CHECK(kronecker_symbol(-4, 5) == 1);
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(-7, 2) == 1);
  CHECK(kronecker_symbol(-3, 2) == -1);
  CHECK(kronecker_symbol(-8, 2) == 0);
}

TEST_CASE("Cartan orders against direct counts") {
  CHECK(cartan_order(3, 1, ImagQuadDisc(-4)) == 8);
  CHECK(cartan_order(5, 1, ImagQuadDisc(-4)) == 16);
  CHECK(cartan_order(2, 1, ImagQuadDisc(-4)) == 2);
  for (std::int64_t p : {2, 3, 5, 7})
    for (unsigned n = 1; n <= 2; ++n)
      for (std::int64_t d : {-3, -4, -7, -8, -11, -20}) {
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(d);
        CHECK(cartan_order(static_cast<std::uint64_t>(p), n, ImagQuadDisc(d)) == count_units(p, n, d));
      }
}

TEST_CASE("Cartan groups") {
  PrimePowerModulus m3(3, 1), m5(5, 1), m7(7, 1);
  auto c3 = build_cartan(ImagQuadDisc(-4), m3);
  CHECK(c3.order() == 8);
  CHECK(is_commutative(c3));
  CHECK(common_fixed_lines(c3).empty());
  auto s5 = classify(build_cartan(ImagQuadDisc(-4), m5));
  CHECK(s5.split_cartan.has_value());
  auto r7 = classify(build_cartan(ImagQuadDisc(-7), m7));
  CHECK(r7.radical.has_value());
  Mat2 c = conjugation_element(ImagQuadDisc(-7), m7);
  CHECK(c * c == Mat2::identity(m7));
}

TEST_CASE("prime-power cases") {
  FieldFlags none;
  auto r1 = classify_prime_power_cm(7, 1, ImagQuadDisc(-7), none);
  CHECK(r1.which == CmCase::kRamifiedGlobal);
  CHECK(r1.global_isogeny);
  FieldFlags sq5;
  sq5.sqrt_ell_in_k = true;
  auto r2 = classify_prime_power_cm(5, 2, ImagQuadDisc(-4), sq5);
  CHECK(r2.which == CmCase::kSplit);
  CHECK(r2.bullet == SplitBullet::kOneModFour);
  CHECK(r2.exceptional);
  auto r3 = classify_prime_power_cm(3, 2, ImagQuadDisc(-4), none);
  CHECK(r3.which == CmCase::kIndexBound);
  CHECK(static_cast<double>(r3.index_bound) >= std::sqrt(3.0));
  CHECK(r3.index_bound == 2);
  // inert, n = 1: the elements with a root form F_3^* inside F_9^*, index 4
  CHECK(exhaustive_root_index(3, 1, ImagQuadDisc(-4)) == 4);
}

TEST_CASE("A*B*C factorisation") {
  FieldFlags none;
  auto a = abc_factorization(7, ImagQuadDisc(-7), none);
  CHECK(a.A == 1);
  CHECK(a.B == 7);
  CHECK(a.C == 1);
  FieldFlags sq5;
  sq5.sqrt_ell_in_k = true;
  auto b = abc_factorization(35, ImagQuadDisc(-4), sq5);
  CHECK(b.C == 5);
  CHECK(b.A * b.B == 7);
  FieldFlags inside;
  inside.f_in_k = true;
  for (std::uint64_t n = 1; n < 400; ++n) {
    auto r = abc_factorization(n, ImagQuadDisc(-3), inside);
    CHECK(r.C == 1);
    CHECK(r.A * r.B * r.C == n);
  }
  CHECK(abc_factorization(1, ImagQuadDisc(-4), none).A_bound == 256);
}

TEST_CASE("field flag parsing") {
  auto f = parse_field_flags("f_in_k=1,sqrt_ell_in_k=true,deg_k=4,index_d=2");
  CHECK(f.f_in_k);
  CHECK(f.sqrt_ell_in_k);
  CHECK_FALSE(f.sqrt2_in_k);
  CHECK(f.deg_k == 4);
  CHECK(f.index_d == 2);
  CHECK_THROWS_AS(parse_field_flags("nonsense=1"), Error);
  CHECK_THROWS_AS(parse_field_flags("f_in_k"), Error);
}

TEST_CASE("prime bound") {
  CHECK(lift_exceptional_prime_bound(1) == 7);
  CHECK(lift_exceptional_prime_bound(2) == 13);
  CHECK(lift_exceptional_prime_bound(10) == 61);
}
