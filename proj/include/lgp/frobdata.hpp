// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "lgp/modring.hpp"

namespace lgp {

struct FrobRecord {
  std::uint64_t p = 0;
  std::int64_t a_p = 0;
  friend bool operator==(const FrobRecord&, const FrobRecord&) = default;
};

// "p a_p" per line, '#' starts a comment. Malformed lines are kParse
// errors naming the line; Hasse-bound violations are kData errors.
std::vector<FrobRecord> parse_ap_text(const std::string& text);
std::vector<FrobRecord> parse_ap_stream(std::istream& in);
std::vector<FrobRecord> parse_ap_file(const std::string& path);

// x^2 - a_p x + p has a root mod l^n. Throws kBadReduction when p = l.
bool frob_passes(const FrobRecord& rec, const PrimePowerModulus& mod);
// First record, in input order, that fails.
std::optional<FrobRecord> find_witness(const std::vector<FrobRecord>& records, const PrimePowerModulus& mod);

}  // namespace lgp
