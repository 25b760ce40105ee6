// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "lgp/fixtures.hpp"
#include "lgp/report.hpp"

using namespace lgp;

TEST_CASE("fixture parsing") {
  auto one = parse_group_fixtures(R"({"prime": 3, "exponent": 2, "generators": ["[[1,1],[0,1]]"]})");
  REQUIRE(one.size() == 1);
  CHECK(one[0].prime == 3);
  CHECK(close_fixture(one[0]).order() == 9);
  auto rows = parse_group_fixtures(R"({"rows": [{"label": "a", "prime": 2, "exponent": 3, "generators": []}]})");
  CHECK(rows.at(0).label == "a");
  CHECK_THROWS_AS(parse_group_fixtures("[1, 2"), Error);
  CHECK_THROWS_AS(parse_group_fixtures(R"([{"prime": 2}])"), Error);
  auto sing = parse_group_fixtures(R"({"prime": 2, "exponent": 3, "generators": ["[[2,0],[0,1]]"]})");
  CHECK_THROWS_AS(close_fixture(sing[0]), Error);
}

TEST_CASE("published rows") {
  auto fxs = load_group_fixtures(resolve_fixture("table1.json"));
  CHECK(fxs.size() == 31);
  std::size_t by_n[7] = {};
  for (const auto& f : fxs) ++by_n[f.exponent];
  CHECK(by_n[3] == 2);
  CHECK(by_n[4] == 1);
  CHECK(by_n[5] == 13);
  CHECK(by_n[6] == 15);
}

TEST_CASE("search rows round-trip through the fixture schema") {
  SearchOptions opt;
  auto rep = exc2_report(4, opt);
  REQUIRE(rep["rows"].size() == 1);
  auto back = parse_group_fixtures(rep["rows"].dump());
  REQUIRE(back.size() == 1);
  auto g = close_fixture(back[0]);
  CHECK(g.order() == rep["rows"][0]["order"].get<std::size_t>());
  CHECK(back[0].gl2_level == 8u);
}
