// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <doctest.h>
#include <set>

#include <random>

#include "lgp/exceptional.hpp"
#include "lgp/fixtures.hpp"
#include "lgp/group.hpp"
#include "lgp/search.hpp"
#include "oracle.hpp"

using namespace lgp;

namespace {

Mat2 mk(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, const PrimePowerModulus& m) {
  return Mat2(a, b, c, d, m);
}

MatGroup upper_borel(const PrimePowerModulus& m) {
  std::vector<Mat2> g{mk(1, 1, 0, 1, m)};
  for (std::uint64_t u = 1; u < m.modulus(); ++u)
    if (m.is_unit(u)) {
      g.push_back(Mat2::from_unsigned(u, 0, 0, 1, m));
      g.push_back(Mat2::from_unsigned(1, 0, 0, u, m));
    }
  return closure(m, g);
}

MatGroup table_group(const std::string& label) {
  for (const auto& fx : load_group_fixtures(resolve_fixture("table1.json")))
    if (fx.label == label) return close_fixture(fx);
  FAIL("missing fixture row " << label);
  throw 0;
}

}  // namespace

TEST_CASE("closure orders against a naive closure") {
  PrimePowerModulus m27(3, 3), m5(5, 1), m8(2, 3);
  CHECK(closure(m27, {Mat2::identity(m27)}).order() == 1);
  CHECK(closure(m5, {mk(0, -1, 1, 0, m5)}).order() == 4);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    std::uniform_int_distribution<std::int64_t> d(0, 7);
    std::vector<Mat2> gens;
    std::vector<oracle::M> raw;
    while (gens.size() < 2) {
      oracle::M a{d(rng), d(rng), d(rng), d(rng)};
      Mat2 x(a[0], a[1], a[2], a[3], m8);
      if (!x.is_invertible()) continue;
      gens.push_back(x);
      raw.push_back(a);
    }
    CHECK(closure(m8, gens).order() == oracle::close(raw, 8).size());
  }
  CHECK(full_gl2(m27).order() == gl2_order(m27));
  CHECK(gl2_order(m27) == 27ull * 27 * 27 * 27 * 2 * 8 / 27);
}

TEST_CASE("closure respects the element cap") {
  PrimePowerModulus m27(3, 3);
  CHECK_THROWS_AS(closure(m27, {mk(1, 1, 0, 1, m27), mk(1, 0, 1, 1, m27), mk(2, 0, 0, 1, m27)}, 1000), Error);
}

TEST_CASE("reduce_group") {
  auto k = build_K_group(3, 1);
  CHECK(reduce_group(k, 3).keys() == k.keys());
  std::set<std::array<std::uint64_t, 4>> images;
  for (const auto& g : k.elements()) images.insert(reduce(g, 2).entries());
  CHECK(reduce_group(k, 2).order() == images.size());
  auto r = build_R_group(3, 1);
  auto r3 = reduce_group(r, 1);
  CHECK(classify(r3).radical.has_value());
}

TEST_CASE("classify examples") {
  PrimePowerModulus m9(3, 2), m3(3, 1), m27(3, 3);
  auto b = classify(upper_borel(m9));
  REQUIRE(b.borel.has_value());
  CHECK(*b.borel == LineClass(1, 0, m9));
  CHECK_FALSE(classify(build_R_group(3, 1)).borel.has_value());
  auto rad = classify(closure(m3, {mk(2, 0, 0, 1, m3), mk(1, 1, 0, 1, m3), mk(-1, 0, 0, -1, m3)}));
  REQUIRE(rad.radical.has_value());
  CHECK(rad.radical->line == LineClass(1, 0, m3));
  auto full = classify(full_gl2(m3));
  CHECK(full.det_surjective);
  CHECK(full.gl2_level_exponent == 0);
  (void)m27;
}

TEST_CASE("cartan_borel_factorization examples") {
  PrimePowerModulus m27(3, 3);
  CHECK(cartan_borel_factorization(upper_borel(m27)) == std::pair{0u, 3u});
  CHECK_FALSE(cartan_borel_factorization(build_R_group(3, 1)).has_value());
  std::vector<Mat2> diag;
  for (std::uint64_t u = 1; u < 27; ++u)
    if (u % 3) diag.push_back(Mat2::from_unsigned(u, 0, 0, 1, m27)), diag.push_back(Mat2::from_unsigned(1, 0, 0, u, m27));
  CHECK(cartan_borel_factorization(closure(m27, diag)) == std::pair{3u, 0u});
}

TEST_CASE("square discriminants and roots") {
  PrimePowerModulus m27(3, 3), m3(3, 1);
  auto scal = closure(m27, {Mat2::scalar(2, m27)});
  CHECK(all_square_disc(scal));
  CHECK(all_charpoly_root(scal));
  CHECK(all_square_disc(build_R_group(3, 1)));
  CHECK_FALSE(all_square_disc(full_gl2(m3)));
  CHECK(all_charpoly_root(table_group("2147")));
}

TEST_CASE("ratio_character") {
  PrimePowerModulus m9(3, 2);
  auto g = closure(m9, {mk(2, 1, 0, 5, m9)});
  auto phi = ratio_character(g, LineClass(1, 0, m9));
  const auto key = g.arith().key(mk(2, 1, 0, 5, m9));
  const auto it = std::lower_bound(g.keys().begin(), g.keys().end(), key);
  CHECK(phi[static_cast<std::size_t>(it - g.keys().begin())] == 4);
  auto u = closure(m9, {mk(1, 1, 0, 1, m9)});
  for (auto v : ratio_character(u, LineClass(1, 0, m9))) CHECK(v == 1);
}

TEST_CASE("kernel_K index") {
  PrimePowerModulus m27(3, 3);
  auto b = upper_borel(m27);
  auto k = kernel_K(b, LineClass(1, 0, PrimePowerModulus(3, 2)));
  // phi = a/d on the line maps onto units mod 9
  CHECK(b.order() / k.order() == 6);
}

TEST_CASE("conjugacy") {
  PrimePowerModulus m9(3, 2);
  auto up = upper_borel(m9);
  auto lo = conjugate_group(up, mk(0, 1, 1, 0, m9));
  auto id = conjugacy_equivalent(up, up);
  REQUIRE(id.has_value());
  CHECK(conjugate_group(up, *id).keys() == up.keys());
  auto p = conjugacy_equivalent(up, lo);
  REQUIRE(p.has_value());
  CHECK(conjugate_group(up, *p).keys() == lo.keys());
  CHECK_FALSE(conjugacy_equivalent(up, build_K_group(3, 1)).has_value());
}

TEST_CASE("fingerprints") {
  PrimePowerModulus m8(2, 3);
  auto triv = fingerprint(closure(m8, {}));
  CHECK(triv.order == 1);
  CHECK(triv.det_image == 1);
  auto a = table_group("2147"), b = table_group("2177");
  CHECK(fingerprint(a) == fingerprint(conjugate_group(a, mk(1, 1, 2, 3, m8))));
  CHECK_FALSE(fingerprint(a) == fingerprint(b));
}

TEST_CASE("small subgroup enumeration") {
  SearchOptions opt;
  opt.require_scalars = false;
  auto e = enumerate_subgroups(PrimePowerModulus(2, 1), ElementPredicate::kCharRoot, opt);
  std::vector<std::size_t> orders;
  for (const auto& g : e.groups) orders.push_back(g.order());
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<std::size_t>{1, 2});
  CHECK(search_maximal_exceptional_2adic(2).maximal_exceptional.empty());
}

TEST_CASE("is_exceptional_2adic") {
  CHECK_FALSE(is_exceptional_2adic(upper_borel(PrimePowerModulus(2, 3))));
  CHECK(is_exceptional_2adic(table_group("2147")));
  CHECK(is_exceptional_2adic(table_group("27445")));
}
