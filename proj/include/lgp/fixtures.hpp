// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lgp/group.hpp"

namespace lgp {

// One group record: a JSON object with prime, exponent and generator
// strings, plus optional label / gl2_level / genus / det_surjective.
// The same schema is emitted for search results, so output can be fed back.
struct GroupFixture {
  std::string label;
  std::uint64_t prime = 2;
  unsigned exponent = 1;
  std::optional<std::uint64_t> gl2_level;
  std::optional<std::uint64_t> genus;
  std::optional<bool> det_surjective;
  std::vector<std::string> generators;
};

// Accepts a single object or an array of objects. Throws kParse.
std::vector<GroupFixture> parse_group_fixtures(const std::string& json_text);
std::vector<GroupFixture> load_group_fixtures(const std::string& path);
MatGroup close_fixture(const GroupFixture& fx, std::size_t cap = MatGroup::kDefaultCap);

// $ISOGENY_LGP_FIXTURES, else the directory baked in at build time.
std::string fixture_dir();
// Absolute or existing paths pass through; bare names resolve in fixture_dir().
std::string resolve_fixture(const std::string& name);

}  // namespace lgp
