// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/frobdata.hpp"

#include <fstream>
#include <sstream>

#include "lgp/error.hpp"

namespace lgp {

std::vector<FrobRecord> parse_ap_stream(std::istream& in) {
  std::vector<FrobRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string ps, as, extra;
    if (!(ls >> ps)) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!(ls >> as) || (ls >> extra)) fail(ErrorCode::kParse, where + "expected two fields");
    FrobRecord r;
    std::size_t used = 0;
    try {
      if (ps.empty() || ps[0] == '-' || ps[0] == '+') throw std::invalid_argument(ps);
      r.p = std::stoull(ps, &used);
      if (used != ps.size()) throw std::invalid_argument(ps);
      r.a_p = std::stoll(as, &used);
      if (used != as.size()) throw std::invalid_argument(as);
    } catch (const std::logic_error&) {
      fail(ErrorCode::kParse, where + "not an integer pair");
    }
    if (!is_prime(r.p)) fail(ErrorCode::kData, where + std::to_string(r.p) + " is not prime");
    const unsigned __int128 a2 = static_cast<unsigned __int128>(r.a_p < 0 ? -r.a_p : r.a_p) *
                                 static_cast<unsigned __int128>(r.a_p < 0 ? -r.a_p : r.a_p);
    if (a2 > static_cast<unsigned __int128>(4) * r.p) fail(ErrorCode::kData, where + "trace violates the Hasse bound");
    out.push_back(r);
  }
  return out;
}

std::vector<FrobRecord> parse_ap_text(const std::string& text) {
  std::istringstream in(text);
  return parse_ap_stream(in);
}

std::vector<FrobRecord> parse_ap_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kInvalidArgument, "cannot open " + path);
  return parse_ap_stream(in);
}

bool frob_passes(const FrobRecord& rec, const PrimePowerModulus& mod) {
  if (rec.p == mod.prime()) fail(ErrorCode::kBadReduction, "p equals the isogeny prime");
  const std::uint64_t b = mod.neg(mod.reduce(rec.a_p));
  return quad_has_root(b, mod.reduce_u(rec.p), mod);
}

std::optional<FrobRecord> find_witness(const std::vector<FrobRecord>& records, const PrimePowerModulus& mod) {
  for (const auto& r : records) {
    if (!frob_passes(r, mod)) return r;
  }
  return std::nullopt;
}

}  // namespace lgp
