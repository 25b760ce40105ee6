// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/fixtures.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lgp/error.hpp"

#ifndef LGP_FIXTURE_DIR
#define LGP_FIXTURE_DIR "fixtures"
#endif

namespace lgp {

namespace {

GroupFixture from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::kParse, "group record must be an object");
  GroupFixture fx;
  try {
    fx.prime = j.at("prime").get<std::uint64_t>();
    fx.exponent = j.at("exponent").get<unsigned>();
    if (j.contains("label")) fx.label = j["label"].is_string() ? j["label"].get<std::string>() : j["label"].dump();
    if (j.contains("gl2_level")) fx.gl2_level = j["gl2_level"].get<std::uint64_t>();
    if (j.contains("genus")) fx.genus = j["genus"].get<std::uint64_t>();
    if (j.contains("det_surjective")) fx.det_surjective = j["det_surjective"].get<bool>();
    fx.generators = j.at("generators").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("bad group record: ") + e.what());
  }
  return fx;
}

}  // namespace

std::vector<GroupFixture> parse_group_fixtures(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("fixture is not JSON: ") + e.what());
  }
  std::vector<GroupFixture> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(from_json(item));
  } else if (j.is_object() && j.contains("rows")) {
    for (const auto& item : j["rows"]) out.push_back(from_json(item));
  } else {
    out.push_back(from_json(j));
  }
  return out;
}

std::vector<GroupFixture> load_group_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_fixtures(ss.str());
}

MatGroup close_fixture(const GroupFixture& fx, std::size_t cap) {
  PrimePowerModulus mod(fx.prime, fx.exponent);
  if (mod.modulus() > KeyArith::kMaxModulus) fail(ErrorCode::kCapacity, "modulus above 2^16");
  std::vector<Mat2> gens;
  for (const auto& s : fx.generators) {
    Mat2 m = parse_mat2(s, mod);
    if (!m.is_invertible()) fail(ErrorCode::kInvalidArgument, "generator " + s + " is not invertible");
    gens.push_back(m);
  }
  return closure(mod, gens, cap);
}

std::string fixture_dir() {
  if (const char* env = std::getenv("ISOGENY_LGP_FIXTURES"); env && *env) return env;
  return LGP_FIXTURE_DIR;
}

std::string resolve_fixture(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::path(name).is_absolute() || fs::exists(name)) return name;
  return (fs::path(fixture_dir()) / name).string();
}

}  // namespace lgp
