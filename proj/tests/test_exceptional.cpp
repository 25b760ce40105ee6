// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "lgp/exceptional.hpp"
#include "lgp/genus.hpp"
#include "oracle.hpp"

using namespace lgp;

TEST_CASE("kernel-type group") {
  auto k = build_K_group(3, 1);
  CHECK(k.order() == 1458);
  // direct count of [[r,s],[9s,t]] with r = t mod 9, r a unit
  std::size_t count = 0;
  for (int r = 0; r < 27; ++r)
    for (int t = 0; t < 27; ++t)
      if (r % 3 && (r - t) % 9 == 0) count += 27;
  CHECK(count == 1458);
  CHECK(all_square_disc(build_K_group(5, 1)));
}

TEST_CASE("eigenlines of the kernel group") {
  std::set<std::uint64_t> ys;
  for (const auto& l : simultaneous_eigenlines_K(3, 1)) {
    CHECK(l.x() == 1);
    ys.insert(l.y());
  }
  CHECK(ys == std::set<std::uint64_t>{3, 6, 12, 15, 21, 24});
  for (const auto& l : simultaneous_eigenlines_K(5, 1)) {
    CHECK(l.y() % 5 == 0);
    const auto k = l.y() / 5 % 5;
    CHECK((k == 1 || k == 4));
  }
  // m = 2: the lines (1, 3k) mod 3^5 are those with k^2 = 9 mod 27, i.e. k = +-3 mod 9
  std::set<std::uint64_t> ks;
  for (const auto& l : simultaneous_eigenlines_K(3, 2)) ks.insert(l.y() / 3);
  CHECK(ks.size() == 18);
  for (auto k : ks) CHECK(((k % 9 == 3) || (k % 9 == 6)));
}

TEST_CASE("classify_XK examples") {
  PrimePowerModulus m27(3, 3);
  CHECK(classify_XK(Mat2(1, 0, 0, 8, m27), 3, 1).verdict == XKVerdict::kLiftExceptional);
  auto u = classify_XK(Mat2(1, 1, 0, 1, m27), 3, 1);
  CHECK(u.verdict == XKVerdict::kDiscViolation);
  REQUIRE(u.bad_element.has_value());
  CHECK_FALSE(is_square(u.bad_element->disc(), m27));
  CHECK(classify_XK(Mat2(1, 0, 0, -1, m27), 3, 1).verdict == XKVerdict::kLiftExceptional);
  CHECK_THROWS_AS(classify_XK(Mat2(1, 0, 1, 1, m27), 3, 1), Error);
}

TEST_CASE("normalisation into R") {
  PrimePowerModulus m27(3, 3);
  auto r = build_R_group(3, 1);
  auto n0 = normalize_to_R(Mat2(1, 0, 0, 8, m27), 3, 1);
  CHECK(n0.mu == 0);
  // z = 0, b = 1, a = 1 with opposite diagonals: mu = -(z + b) / 2a = 1 mod 3
  auto n1 = normalize_to_R(Mat2(1, 1, 0, 8, m27), 3, 1);
  CHECK(n1.mu % 3 == 1);
  for (auto key : n1.image.keys()) CHECK(r.contains_key(key));
  CHECK_THROWS_AS(normalize_to_R(Mat2(1, 1, 0, 1, m27), 3, 1), Error);
}

TEST_CASE("sweep mod 27") {
  auto s = sweep_upthm(3, 1);
  CHECK(s.candidates == s.lift_exceptional + s.borel + s.disc_violation);
  CHECK(s.mismatches == 0);
  CHECK(s.not_conjugate_into_R == 0);
}

TEST_CASE("exceptional groups at 5 and 7") {
  auto h5 = build_H_exc(5, 1), h7 = build_H_exc(7, 1);
  CHECK(h5.order() == 16);
  CHECK(h7.order() == 36);
  CHECK(all_square_disc(build_H_exc(5, 2)));
  // projective images: Klein four and S3
  auto proj = [](const MatGroup& g) {
    std::size_t scalars = 0;
    for (const auto& x : g.elements()) scalars += x.is_scalar();
    return g.order() / scalars;
  };
  CHECK(proj(h5) == 4);
  CHECK(proj(h7) == 6);
  CHECK(build_H_exc_teichmuller(2).order() == 16);
}

TEST_CASE("stable subspaces mod 5") {
  auto r = verify_D4_subrep_claim();
  CHECK(r.subspaces_total == 1120);
  CHECK(r.lattices_agree);
  CHECK(r.stable_brute_force == r.stable_isotypic);
  CHECK(r.abc_is_inadmissible);
  CHECK(r.maximal_admissible == std::vector<std::string>{"A+B", "A+C", "A+D"});
  for (auto g : r.genera) CHECK(g >= 2);
  CHECK(r.claim_holds);
}
