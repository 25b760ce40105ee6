// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "lgp/exceptional.hpp"
#include "lgp/fixtures.hpp"
#include "lgp/genus.hpp"
#include "lgp/report.hpp"

using namespace lgp;

namespace {

// Genus of X0(N) from psi(N), the elliptic point counts and the cusp sum,
// all computed by direct counting.
std::uint64_t x0_genus_by_counting(std::uint64_t n) {
  std::uint64_t psi = 0;  // points of P^1(Z/N)
  for (std::uint64_t c = 0; c < n; ++c)
    for (std::uint64_t d = 0; d < n; ++d)
      if (std::gcd(std::gcd(c, d), n) == 1) ++psi;
  std::uint64_t units = 0;
  for (std::uint64_t u = 1; u <= n; ++u) units += std::gcd(u, n) == 1;
  psi /= units;
  std::int64_t nu2 = 0, nu3 = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    nu2 += (x * x + 1) % n == 0;
    nu3 += (x * x + x + 1) % n == 0;
  }
  std::uint64_t cusps = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    const std::uint64_t g = std::gcd(d, n / d);
    for (std::uint64_t u = 1; u <= g; ++u) cusps += std::gcd(u, g) == 1;
  }
  const std::int64_t twelve =
      static_cast<std::int64_t>(psi) - 3 * nu2 - 4 * nu3 - 6 * static_cast<std::int64_t>(cusps) + 12;
  REQUIRE(twelve % 12 == 0);
  return static_cast<std::uint64_t>(twelve / 12);
}

MatGroup borel(const PrimePowerModulus& m) {
  std::vector<Mat2> g{Mat2(1, 1, 0, 1, m)};
  for (std::uint64_t u = 1; u < m.modulus(); ++u)
    if (m.is_unit(u)) g.push_back(Mat2::from_unsigned(u, 0, 0, 1, m)), g.push_back(Mat2::from_unsigned(1, 0, 0, u, m));
  return closure(m, g);
}

}  // namespace

TEST_CASE("X0(N) against direct counting") {
  for (std::uint64_t n = 1; n <= 100; ++n) {
    CAPTURE(n);
    CHECK(genus_X0(n) == x0_genus_by_counting(n));
  }
  CHECK(genus_X0(2) == 0);
  CHECK(genus_X0(49) == 1);
  CHECK(genus_X0(81) == 4);
}

TEST_CASE("genus of explicit groups") {
  CHECK(genus_of(full_gl2(PrimePowerModulus(2, 1))).genus == 0);
  CHECK(genus_of(borel(PrimePowerModulus(3, 3))).genus == 1);
  CHECK(genus_of(build_R_group(3, 1)).genus == 4);
  for (const auto& fx : load_group_fixtures(resolve_fixture("table1.json")))
    if (fx.label == "189621") CHECK(genus_of(close_fixture(fx)).genus == 1);
}

TEST_CASE("sl2 part") {
  PrimePowerModulus m5(5, 1);
  CHECK(sl2_part(full_gl2(m5)).order() == 120);
  bool adj = true;
  auto r = sl2_part(build_R_group(3, 1), &adj);
  CHECK(r.contains(Mat2(-1, 0, 0, -1, PrimePowerModulus(3, 3))));
  CHECK_FALSE(adj);
}

TEST_CASE("coset action sanity") {
  auto a = coset_action(sl2_part(borel(PrimePowerModulus(2, 3))));
  CHECK(a.degree == 12);
  // S has order dividing 4 and R order dividing 3 on cosets
  for (std::size_t i = 0; i < a.degree; ++i) {
    auto s = i;
    for (int k = 0; k < 4; ++k) s = a.perm_S[s];
    CHECK(s == i);
    auto r = i;
    for (int k = 0; k < 3; ++k) r = a.perm_R[r];
    CHECK(r == i);
  }
}

TEST_CASE("genus formula integral on random groups") {
  std::mt19937_64 rng(9);
  for (auto [p, n] : {std::pair{2ull, 3u}, {3ull, 2u}, {5ull, 2u}, {3ull, 3u}}) {
    PrimePowerModulus mod(p, n);
    std::uniform_int_distribution<std::uint64_t> d(0, mod.modulus() - 1);
    for (int i = 0; i < 15; ++i) {
      std::vector<Mat2> gens;
      while (gens.size() < 2) {
        Mat2 x = Mat2::from_unsigned(d(rng), d(rng), d(rng), d(rng), mod);
        if (x.is_invertible()) gens.push_back(x);
      }
      auto g = genus_of(closure(mod, gens));
      const std::int64_t twelve = static_cast<std::int64_t>(g.index_mu) - 3 * static_cast<std::int64_t>(g.e2) -
                                  4 * static_cast<std::int64_t>(g.e3) - 6 * static_cast<std::int64_t>(g.cusps);
      CHECK(twelve + 12 == 12 * static_cast<std::int64_t>(g.genus));
    }
  }
}

TEST_CASE("fiber products") {
  auto g = factor_data(borel(PrimePowerModulus(2, 3)));
  auto x3 = borel_factor(3, 1);
  CHECK(combine_factors({g}).genus == genus_X0(8));
  CHECK(combine_factors({g, x3}).genus == genus_X0(24));
  CHECK(combine_factors({g, x3}).index_mu == 12 * 4);
  CHECK_THROWS_AS(combine_factors({g, borel_factor(2, 1)}), Error);
  auto h5 = factor_data(build_H_exc(5, 1));
  CHECK(combine_factors({h5, borel_factor(2, 1)}).genus <= 1);
  for (const auto& fx : load_group_fixtures(resolve_fixture("table1.json")))
    if (fx.label == "2147") CHECK(combine_factors({factor_data(close_fixture(fx)), x3}).genus <= 1);
  // direct product closure gives the same answer as the factor combination
  auto direct = genus_of_product({borel(PrimePowerModulus(2, 2)), borel(PrimePowerModulus(3, 1))});
  CHECK(direct.genus == genus_X0(12));
}

TEST_CASE("rational exception list") {
  auto rep = assemble_Q_exception_list(table_groups_up_to("table1.json", 5), exceptional_h_groups());
  CHECK(rep.list == std::vector<std::uint64_t>{5, 7, 8, 10, 16, 24, 25, 32, 40, 49, 50, 72});
  CHECK(rep.all_g_times_h_above_one);
  REQUIRE(rep.h_times_x0_survivors.size() == 1);
  CHECK(rep.h_times_x0_survivors[0].group == "H5");
  CHECK(rep.h_times_x0_survivors[0].n == 2);
  std::set<std::pair<std::string, std::uint64_t>> gx;
  for (const auto& r : rep.g_times_x0_survivors) gx.insert({r.group, r.n});
  CHECK(gx == std::set<std::pair<std::string, std::uint64_t>>{
                  {"2147", 3}, {"2147", 5}, {"2147", 9}, {"2177", 3}, {"2177", 5}, {"2177", 9}});
}
