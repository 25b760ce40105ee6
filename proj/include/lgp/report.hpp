// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

// JSON reports shared by the C API and the tools. Every report is a pure
// function of its inputs (no timings), so output is byte-stable.
#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "lgp/genus.hpp"
#include "lgp/search.hpp"

namespace lgp {

using Json = nlohmann::ordered_json;

Json group_row(const MatGroup& g, const std::string& label = "");
Json genus_row(const GenusData& d, const std::string& label = "");

Json exc2_report(unsigned n, const SearchOptions& options);
Json liftexc_classify_report(std::uint64_t ell, unsigned m, const std::string& matrix);
Json liftexc_sweep_report(std::uint64_t ell, unsigned m);
Json genus_fixture_report(const std::string& path);
Json genus_x0_report(std::uint64_t n);
// Factor specs: "x0:N", "h:5", "h:7", "r:L:M", or a fixture file with an
// optional ":label" suffix.
Json fiber_report(const std::vector<std::string>& specs);
Json q_list_report(const std::string& table_path);
Json cm_classify_report(std::uint64_t ell, unsigned n, std::int64_t disc, const std::string& flags);
Json cm_abc_report(std::uint64_t N, std::int64_t disc, const std::string& flags);
Json frob_report(const std::string& path, std::uint64_t ell, unsigned n);

// Groups used by the rational exception list: Table rows with n <= 5 and
// the level-p exceptional groups at 5 and 7.
std::vector<NamedGroup> table_groups_up_to(const std::string& table_path, unsigned max_exponent);
std::vector<NamedGroup> exceptional_h_groups();

}  // namespace lgp
