// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/report.hpp"

#include "lgp/cm.hpp"
#include "lgp/error.hpp"
#include "lgp/exceptional.hpp"
#include "lgp/fixtures.hpp"
#include "lgp/frobdata.hpp"

namespace lgp {

namespace {

Json generator_list(const MatGroup& g) {
  Json gens = Json::array();
  for (const auto& m : g.generators()) gens.push_back(m.to_string());
  return gens;
}

Json line_json(const LineClass& l) { return l.to_string(); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used == s.size() && !s.empty() && s[0] != '-') return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::kParse, "expected a nonnegative integer, got '" + s + "'");
}

}  // namespace

Json group_row(const MatGroup& g, const std::string& label) {
  Json row;
  if (!label.empty()) row["label"] = label;
  row["prime"] = g.modulus().prime();
  row["exponent"] = g.modulus().exponent();
  row["gl2_level"] = g.modulus().power(gl2_level_exponent(g));
  row["genus"] = genus_of(g).genus;
  row["det_surjective"] = det_surjective(g);
  row["order"] = g.order();
  row["generators"] = generator_list(g);
  return row;
}

Json genus_row(const GenusData& d, const std::string& label) {
  Json row;
  if (!label.empty()) row["label"] = label;
  row["level"] = d.level;
  row["index"] = d.index_mu;
  row["e2"] = d.e2;
  row["e3"] = d.e3;
  row["cusps"] = d.cusps;
  row["genus"] = d.genus;
  row["minus_identity_adjoined"] = d.minus_identity_adjoined;
  return row;
}

Json exc2_report(unsigned n, const SearchOptions& options) {
  auto res = search_maximal_exceptional_2adic(n, options);
  Json out;
  out["n"] = n;
  Json levels = Json::array();
  for (const auto& l : res.levels) levels.push_back({{"exponent", l.exponent}, {"classes", l.classes}});
  out["levels"] = levels;
  Json rows = Json::array();
  for (const auto& g : res.maximal_exceptional) rows.push_back(group_row(g));
  out["count"] = rows.size();
  out["rows"] = rows;
  return out;
}

Json liftexc_classify_report(std::uint64_t ell, unsigned m, const std::string& matrix) {
  PrimePowerModulus mod(ell, 2 * m + 1);
  Mat2 x = parse_mat2(matrix, mod);
  auto cls = classify_XK(x, ell, m);
  Json out;
  out["prime"] = ell;
  out["m"] = m;
  out["modulus"] = mod.modulus();
  out["x"] = x.to_string();
  out["verdict"] = verdict_name(cls.verdict);
  out["diagonals_opposite"] = diagonals_opposite(x, ell, m);
  out["group_order"] = cls.group_order;
  if (cls.fixed_line) out["fixed_line"] = line_json(*cls.fixed_line);
  if (cls.bad_element) {
    out["bad_element"] = cls.bad_element->to_string();
    out["bad_disc"] = cls.bad_element->disc();
  }
  if (cls.verdict == XKVerdict::kLiftExceptional) {
    auto norm = normalize_to_R(x, ell, m);
    out["mu"] = norm.mu;
    out["conjugator"] = norm.conjugator.to_string();
    out["image_in_R"] = true;
  }
  return out;
}

Json liftexc_sweep_report(std::uint64_t ell, unsigned m) {
  auto s = sweep_upthm(ell, m);
  Json out;
  out["prime"] = ell;
  out["m"] = m;
  out["candidates"] = s.candidates;
  out["lift_exceptional"] = s.lift_exceptional;
  out["borel_contained"] = s.borel;
  out["disc_violation"] = s.disc_violation;
  out["mismatches"] = s.mismatches;
  out["not_conjugate_into_R"] = s.not_conjugate_into_R;
  out["distinct_groups"] = s.distinct_groups;
  return out;
}

Json genus_fixture_report(const std::string& path) {
  Json rows = Json::array();
  for (const auto& fx : load_group_fixtures(resolve_fixture(path))) {
    MatGroup g = close_fixture(fx);
    Json row = genus_row(genus_of(g), fx.label);
    row["order"] = g.order();
    rows.push_back(row);
  }
  return Json{{"rows", rows}};
}

Json genus_x0_report(std::uint64_t n) { return Json{{"rows", Json::array({genus_row(genus_data_X0(n), "X0(" + std::to_string(n) + ")")})}}; }

Json fiber_report(const std::vector<std::string>& specs) {
  if (specs.empty()) fail(ErrorCode::kInvalidArgument, "no factors given");
  std::vector<FactorData> factors;
  Json names = Json::array();
  for (const auto& spec : specs) {
    auto parts = split(spec, ':');
    if (parts[0] == "x0" && parts.size() == 2) {
      for (auto [p, e] : factor_integer(to_u64(parts[1]))) factors.push_back(borel_factor(p, e));
    } else if (parts[0] == "h" && parts.size() == 2) {
      factors.push_back(factor_data(build_H_exc(to_u64(parts[1]), 1)));
    } else if (parts[0] == "r" && parts.size() == 3) {
      factors.push_back(factor_data(build_R_group(to_u64(parts[1]), static_cast<unsigned>(to_u64(parts[2])))));
    } else {
      auto fxs = load_group_fixtures(resolve_fixture(parts[0]));
      const GroupFixture* pick = fxs.empty() ? nullptr : &fxs.front();
      if (parts.size() == 2) {
        pick = nullptr;
        for (const auto& fx : fxs)
          if (fx.label == parts[1]) pick = &fx;
      }
      if (!pick) fail(ErrorCode::kInvalidArgument, "no group for factor " + spec);
      factors.push_back(factor_data(close_fixture(*pick)));
    }
    names.push_back(spec);
  }
  Json row = genus_row(combine_factors(factors));
  row["factors"] = names;
  return Json{{"rows", Json::array({row})}};
}

std::vector<NamedGroup> table_groups_up_to(const std::string& table_path, unsigned max_exponent) {
  std::vector<NamedGroup> out;
  for (const auto& fx : load_group_fixtures(resolve_fixture(table_path))) {
    if (fx.exponent <= max_exponent) out.push_back({fx.label, close_fixture(fx)});
  }
  return out;
}

std::vector<NamedGroup> exceptional_h_groups() { return {{"H5", build_H_exc(5, 1)}, {"H7", build_H_exc(7, 1)}}; }

Json q_list_report(const std::string& table_path) {
  auto rep = assemble_Q_exception_list(table_groups_up_to(table_path, 5), exceptional_h_groups());
  auto rows = [](const std::vector<SweepRow>& v) {
    Json a = Json::array();
    for (const auto& r : v) {
      Json row = genus_row(r.data);
      row["group"] = r.group;
      row["partner"] = r.other;
      a.push_back(row);
    }
    return a;
  };
  Json out;
  out["list"] = rep.list;
  out["singles"] = rep.singles;
  out["x0_genus_at_most_one"] = rep.x0_small_genus;
  out["g_times_h_all_above_one"] = rep.all_g_times_h_above_one;
  std::uint64_t min_genus = ~std::uint64_t{0};
  for (const auto& r : rep.g_times_h) min_genus = std::min(min_genus, r.data.genus);
  out["g_times_h_pairs"] = rep.g_times_h.size();
  out["g_times_h_min_genus"] = rep.g_times_h.empty() ? 0 : min_genus;
  out["g_times_x0_survivors"] = rows(rep.g_times_x0_survivors);
  out["h_times_x0_survivors"] = rows(rep.h_times_x0_survivors);
  return out;
}

Json cm_classify_report(std::uint64_t ell, unsigned n, std::int64_t disc, const std::string& flags) {
  ImagQuadDisc d(disc);
  auto r = classify_prime_power_cm(ell, n, d, parse_field_flags(flags));
  Json out;
  out["prime"] = ell;
  out["n"] = n;
  out["disc"] = disc;
  out["splitting"] = splitting_name(r.splitting);
  out["case"] = static_cast<int>(r.which);
  out["bullet"] = bullet_name(r.bullet);
  out["locally_everywhere"] = r.locally_everywhere;
  out["global_isogeny"] = r.global_isogeny;
  out["exceptional"] = r.exceptional;
  out["index_bound"] = r.index_bound;
  out["universal_bound"] = r.universal_bound;
  out["cartan_order"] = cartan_order(ell, n, d);
  PrimePowerModulus mod(ell, n);
  if (mod.modulus() <= 343) out["exhaustive_root_index"] = exhaustive_root_index(ell, n, d);
  return out;
}

Json cm_abc_report(std::uint64_t N, std::int64_t disc, const std::string& flags) {
  ImagQuadDisc d(disc);
  auto f = parse_field_flags(flags);
  auto r = abc_factorization(N, d, f);
  Json out;
  out["N"] = N;
  out["disc"] = disc;
  out["A"] = r.A;
  out["B"] = r.B;
  out["C"] = r.C;
  out["A_bound"] = r.A_bound;
  out["A_within_bound"] = r.a_within_bound;
  out["prime_bound_lift_exceptional"] = lift_exceptional_prime_bound(f.deg_k);
  return out;
}

Json frob_report(const std::string& path, std::uint64_t ell, unsigned n) {
  PrimePowerModulus mod(ell, n);
  auto recs = parse_ap_file(resolve_fixture(path));
  std::vector<FrobRecord> usable;
  for (const auto& r : recs)
    if (r.p != ell) usable.push_back(r);
  auto w = find_witness(usable, mod);
  Json out;
  out["modulus"] = mod.modulus();
  out["records"] = usable.size();
  out["skipped_equal_prime"] = recs.size() - usable.size();
  if (w) out["witness"] = {{"p", w->p}, {"a_p", w->a_p}};
  else out["witness"] = nullptr;
  return out;
}

}  // namespace lgp
