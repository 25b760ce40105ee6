// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "lgp/mat2.hpp"
#include "oracle.hpp"

using namespace lgp;

namespace {

Mat2 mk(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::uint64_t p, unsigned n) {
  return Mat2(a, b, c, d, PrimePowerModulus(p, n));
}

std::set<std::pair<std::uint64_t, std::uint64_t>> as_set(const std::vector<LineClass>& v) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> s;
  for (const auto& l : v) s.insert({l.x(), l.y()});
  return s;
}

}  // namespace

TEST_CASE("invariants") {
  auto id = invariants_of(Mat2::identity(PrimePowerModulus(3, 3)));
  CHECK(id.trace.value() == 2);
  CHECK(id.det.value() == 1);
  CHECK(id.disc.value() == 0);
  // companion matrix of x^2 + 4x + 53
  auto comp = mk(0, -53, 1, -4, 7, 3);
  CHECK(invariants_of(comp).disc.value() == 147);
  CHECK_FALSE(char_poly_has_root(comp));
  CHECK(char_poly_has_root(mk(0, -53, 1, -4, 7, 2)));
  auto u = invariants_of(mk(1, 1, 0, 1, 3, 2));
  CHECK(u.trace.value() == 2);
  CHECK(u.det.value() == 1);
  CHECK(u.disc.value() == 0);
}

TEST_CASE("upper triangular matrices always have a root") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    std::uniform_int_distribution<std::int64_t> d(0, 1000);
    CHECK(char_poly_has_root(mk(d(rng), d(rng), 0, d(rng), 2, 6)));
  }
}

TEST_CASE("fixed_lines examples") {
  CHECK(fixed_lines(Mat2::identity(PrimePowerModulus(3, 2))).size() == 12);
  CHECK(as_set(fixed_lines(mk(1, 1, 0, 1, 3, 2))) == std::set<std::pair<std::uint64_t, std::uint64_t>>{{1, 0}, {1, 3}, {1, 6}});
  CHECK(as_set(fixed_lines(mk(0, -1, 1, 0, 5, 1))) == std::set<std::pair<std::uint64_t, std::uint64_t>>{{1, 2}, {1, 3}});
}

TEST_CASE("fixed_lines and all_lines agree with brute force mod 8 and mod 9") {
  for (auto [p, n] : {std::pair{2ull, 3u}, {3ull, 2u}}) {
    PrimePowerModulus mod(p, n);
    const std::int64_t m = static_cast<std::int64_t>(mod.modulus());
    auto lines = oracle::lines(static_cast<std::int64_t>(p), m);
    CHECK(all_lines(mod).size() == lines.size());
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::int64_t> d(0, m - 1);
    for (int i = 0; i < 300; ++i) {
      oracle::M a{d(rng), d(rng), d(rng), d(rng)};
      Mat2 x(a[0], a[1], a[2], a[3], mod);
      std::size_t want = 0;
      for (auto [lx, ly] : lines) want += oracle::fixes(a, lx, ly, static_cast<std::int64_t>(p), m);
      REQUIRE(fixed_lines(x).size() == want);
      for (const auto& l : fixed_lines(x))
        CHECK(oracle::fixes(a, static_cast<std::int64_t>(l.x()), static_cast<std::int64_t>(l.y()), 0, m));
    }
  }
}

TEST_CASE("line canonical form") {
  PrimePowerModulus m9(3, 2);
  LineClass l(2, 4, m9);
  CHECK(l.x() == 1);
  CHECK(l.y() == 2);
  LineClass v(3, 1, m9);
  CHECK(v.x() == 3);
  CHECK(v.y() == 1);
  CHECK_THROWS_AS(LineClass(3, 6, m9), Error);
  CHECK(l.reduce(1) == LineClass(1, 2, PrimePowerModulus(3, 1)));
}

TEST_CASE("lift_eigenline examples") {
  PrimePowerModulus m3(3, 1), m5(5, 1);
  CHECK(lift_eigenline(mk(1, 0, 0, 2, 3, 3), LineClass(1, 0, m3)) == LineClass(1, 0, PrimePowerModulus(3, 3)));
  CHECK(lift_eigenline(mk(1, 1, 0, 2, 3, 3), LineClass(1, 1, m3)) == LineClass(1, 1, PrimePowerModulus(3, 3)));
  CHECK(lift_eigenline(mk(2, 1, 1, 2, 5, 2), LineClass(1, 1, m5)) == LineClass(1, 1, PrimePowerModulus(5, 2)));
}

TEST_CASE("lift_eigenline equals the filtered brute-force lift") {
  std::mt19937_64 rng(3);
  PrimePowerModulus m125(5, 3);
  int tested = 0;
  while (tested < 300) {
    std::uniform_int_distribution<std::int64_t> d(0, 124);
    Mat2 x(d(rng), d(rng), d(rng), d(rng), m125);
    auto low = fixed_lines(reduce(x, 1));
    if (low.size() != 2) continue;
    ++tested;
    for (const auto& l : low) {
      std::vector<LineClass> over;
      for (const auto& f : all_lines(m125))
        if (f.reduce(1) == l && fixes_line(x, f)) over.push_back(f);
      REQUIRE(over.size() == 1);
      CHECK(lift_eigenline(x, l) == over.front());
    }
  }
}

TEST_CASE("conjugate and reduce") {
  Mat2 m = mk(3, 5, 7, 11, 3, 3);
  CHECK(conjugate(m, Mat2::identity(m.modulus())) == m);
  CHECK(conjugate(mk(1, 1, 0, 1, 5, 1), mk(0, 1, 1, 0, 5, 1)) == mk(1, 0, 1, 1, 5, 1));
  // P M P^-1 by hand: [[1,13],[0,1]] diag(1,-1) [[1,-13],[0,1]] = [[1,-26],[0,-1]]
  CHECK(conjugate(mk(1, 0, 0, -1, 3, 3), mk(1, 13, 0, 1, 3, 3)) == mk(1, -26, 0, -1, 3, 3));
  CHECK(reduce(m, 3) == m);
  CHECK(reduce(mk(10, 2, 18, 1, 3, 3), 1) == mk(1, 2, 0, 1, 3, 1));
  CHECK(reduce(mk(26, 0, 0, 26, 3, 3), 1) == mk(2, 0, 0, 2, 3, 1));
  CHECK_THROWS_AS(conjugate(m, mk(3, 0, 0, 1, 3, 3)), Error);
}

TEST_CASE("parse_mat2") {
  PrimePowerModulus m8(2, 3);
  CHECK(parse_mat2("[[1,-1],[0, 3]]", m8) == Mat2(1, 7, 0, 3, m8));
  CHECK_THROWS_AS(parse_mat2("[[1,2],[3]]", m8), Error);
  CHECK_THROWS_AS(parse_mat2("junk", m8), Error);
}
