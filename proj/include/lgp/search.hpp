// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lgp/group.hpp"

namespace lgp {

// Element predicates that depend only on (trace, det). Both are inherited by
// subgroups and survive reduction, which is what makes level pruning sound.
enum class ElementPredicate { kCharRoot, kSquareDisc };

struct SearchOptions {
  unsigned threads = 1;
  std::size_t cap = MatGroup::kDefaultCap;
  // Only groups containing every scalar; maximal predicate groups always do.
  bool require_scalars = true;
  // Skip the maximality test for groups that factor; `maximal` then holds
  // only the exceptional ones.
  bool exceptional_only = false;
  // Written after every completed level when non-empty.
  std::string checkpoint_path;
  std::function<void(const std::string&)> progress;
};

struct LevelSummary {
  unsigned exponent = 0;
  std::size_t classes = 0;
  double seconds = 0;
};

struct SubgroupEnumeration {
  std::vector<MatGroup> groups;  // sorted by fingerprint
  std::vector<LevelSummary> levels;
};

// Every subgroup of GL2(Z/p^n) whose elements all satisfy `pred`, up to
// conjugacy (restricted to scalar-containing groups when requested).
SubgroupEnumeration enumerate_subgroups(const PrimePowerModulus& mod, ElementPredicate pred,
                                        const SearchOptions& options = {});

struct MaximalSearchResult {
  std::vector<MatGroup> maximal;              // maximal predicate groups mod p^n
  std::vector<MatGroup> maximal_exceptional;  // those with no Cartan/Borel factorisation
  std::vector<LevelSummary> levels;
};

// Maximal subgroups of GL2(Z/p^n) all of whose elements satisfy `pred`, up to
// conjugacy. Intermediate levels keep all classes; the last level keeps only
// maximal lifts.
MaximalSearchResult search_maximal(const PrimePowerModulus& mod, ElementPredicate pred,
                                   const SearchOptions& options = {});

bool is_exceptional_2adic(const MatGroup& g);
MaximalSearchResult search_maximal_exceptional_2adic(unsigned n, const SearchOptions& options = {});

}  // namespace lgp
