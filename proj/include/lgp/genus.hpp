// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lgp/group.hpp"

namespace lgp {

// Right cosets of the determinant-one part (with -I) inside SL2(Z/p^n), and
// the permutations induced by T = [[1,1],[0,1]], S = [[0,-1],[1,0]],
// R = [[0,-1],[1,-1]].
struct CosetAction {
  std::size_t degree = 0;
  std::vector<std::uint32_t> perm_T;
  std::vector<std::uint32_t> perm_S;
  std::vector<std::uint32_t> perm_R;
};

struct GenusData {
  std::uint64_t level = 1;
  std::uint64_t index_mu = 1;
  std::uint64_t e2 = 0;
  std::uint64_t e3 = 0;
  std::uint64_t cusps = 0;
  std::uint64_t genus = 0;
  bool minus_identity_adjoined = false;
};

// Determinant-one elements, with -I adjoined when missing.
MatGroup sl2_part(const MatGroup& g, bool* adjoined = nullptr);
// Coset action of an SL2 subgroup that already contains -I.
CosetAction coset_action(const MatGroup& sl2_group);

// Summary of one factor, enough to combine factors across coprime levels.
struct FactorData {
  std::uint64_t level = 1;
  std::uint64_t degree = 1;
  std::uint64_t fixed_S = 1;
  std::uint64_t fixed_R = 1;
  std::map<std::uint64_t, std::uint64_t> t_cycles{{1, 1}};  // cycle length -> count
  bool adjoined = false;
};

FactorData factor_data(const MatGroup& g);
FactorData borel_factor(std::uint64_t prime, unsigned exponent);
// Throws kLevel unless the levels are pairwise coprime.
GenusData combine_factors(const std::vector<FactorData>& factors);

GenusData genus_of(const MatGroup& g);
// Fiber product over the j-line of groups of pairwise coprime prime-power level.
GenusData genus_of_product(const std::vector<MatGroup>& groups);
std::uint64_t genus_X0(std::uint64_t n);
GenusData genus_data_X0(std::uint64_t n);

std::vector<std::pair<std::uint64_t, unsigned>> factor_integer(std::uint64_t n);

struct NamedGroup {
  std::string name;
  MatGroup group;
};

struct SweepRow {
  std::string group;
  std::string other;  // partner group name, or X0(N)
  std::uint64_t n = 0;
  std::uint64_t level = 0;
  GenusData data;
};

struct QListReport {
  std::vector<std::uint64_t> x0_small_genus;  // N > 1 with genus(X0(N)) <= 1
  std::vector<SweepRow> g_times_h;            // all pairs
  std::vector<SweepRow> g_times_x0_survivors;
  std::vector<SweepRow> h_times_x0_survivors;
  std::vector<std::uint64_t> singles;
  std::vector<std::uint64_t> list;
  bool all_g_times_h_above_one = false;
};

// `table_groups` are the 2-adic groups (n <= 5); `h_groups` the level-p
// groups at p = 5, 7. Survivors are fiber products of genus <= 1.
QListReport assemble_Q_exception_list(const std::vector<NamedGroup>& table_groups,
                                      const std::vector<NamedGroup>& h_groups);

}  // namespace lgp
