// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through lgp.h; the JSON
// parser is used to pretty-print reports for humans.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "lgp/lgp.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kRuntime = 3 };

struct Common {
  bool json = false;
  unsigned threads = 1;
  std::size_t cap = 0;
  bool allow_long = false;
  std::string checkpoint;
};

int exit_for(lgp_status s) {
  switch (s) {
    case LGP_OK:
      return kOk;
    case LGP_E_VERIFICATION_FAILED:
      return kVerifyFailed;
    case LGP_E_INVALID_ARGUMENT:
    case LGP_E_PARSE:
    case LGP_E_DATA:
    case LGP_E_NOT_POTENTIALLY_EXCEPTIONAL:
    case LGP_E_BAD_REDUCTION:
    case LGP_E_LEVEL:
    case LGP_E_TOO_LONG:
      return kUsage;
    default:
      return kRuntime;
  }
}

std::string yes(bool b) { return b ? "yes" : "no"; }

// Human-readable rendering; every field is also in --json.
void print_rows(const Json& rows) {
  for (const auto& r : rows) {
    std::string line;
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it.key() == "generators") continue;
      if (!line.empty()) line += "  ";
      line += it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    std::cout << line << "\n";
    if (r.contains("generators"))
      for (const auto& g : r["generators"]) std::cout << "    " << g.get<std::string>() << "\n";
  }
}

void print_text(const std::string& cmd, const Json& j) {
  if (cmd == "exc2") {
    for (const auto& l : j["levels"]) std::cout << "level 2^" << l["exponent"] << ": " << l["classes"] << " classes\n";
    std::cout << j["count"] << " maximal exceptional classes mod 2^" << j["n"] << "\n";
    print_rows(j["rows"]);
  } else if (cmd == "assemble-q-list") {
    std::cout << "list:";
    for (const auto& n : j["list"]) std::cout << " " << n;
    std::cout << "\nX0(N) with genus <= 1: " << j["x0_genus_at_most_one"].dump() << "\n";
    std::cout << "all G x H genera above one: " << yes(j["g_times_h_all_above_one"].get<bool>()) << "\n";
    std::cout << "G x X0(N) survivors:\n";
    for (const auto& r : j["g_times_x0_survivors"])
      std::cout << "  " << r["group"].get<std::string>() << " x " << r["partner"].get<std::string>() << "  genus "
                << r["genus"] << "\n";
    std::cout << "H x X0(N) survivors:\n";
    for (const auto& r : j["h_times_x0_survivors"])
      std::cout << "  " << r["group"].get<std::string>() << " x " << r["partner"].get<std::string>() << "  genus "
                << r["genus"] << "\n";
  } else if (cmd == "frob") {
    std::cout << j["records"] << " records checked mod " << j["modulus"] << "\n";
    if (j["witness"].is_null()) std::cout << "no witness\n";
    else std::cout << "witness p = " << j["witness"]["p"] << " (a_p = " << j["witness"]["a_p"] << ")\n";
  } else if (cmd == "verify") {
    std::size_t pass = 0, fail = 0, info = 0;
    for (const auto& c : j["checks"]) {
      const bool ok = c["passed"].get<bool>();
      const bool inf = c["informational"].get<bool>();
      const char* tag = ok ? "PASS" : (inf ? "INFO" : "FAIL");
      (ok ? pass : (inf ? info : fail))++;
      std::cout << tag << " [" << c["module"].get<std::string>() << "] " << c["name"].get<std::string>() << ": "
                << c["detail"].get<std::string>() << "\n";
    }
    std::cout << pass << " passed, " << fail << " failed, " << info << " informational\n";
  } else if (j.contains("rows")) {
    print_rows(j["rows"]);
  } else {
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-global isogeny tools: exceptional groups, genera, CM cases, Frobenius witnesses"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json, "machine-readable output");
  app.add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--cap", common.cap, "element cap for group closures (0 = default)");
  app.add_flag("--allow-long", common.allow_long, "permit multi-minute runs");
  app.add_option("--checkpoint", common.checkpoint, "search checkpoint file");

  unsigned n = 0;
  auto* exc2 = app.add_subcommand("exc2", "maximal exceptional subgroups of GL2(Z/2^n)");
  exc2->add_option("--n", n, "exponent")->required()->check(CLI::Range(1u, 6u));
  bool det_only = false;
  exc2->add_flag("--det-surjective", det_only, "only rows with surjective determinant");

  std::uint64_t ell = 0;
  unsigned m = 0;
  std::string x;
  bool sweep = false;
  auto* liftexc = app.add_subcommand("liftexc", "classify <X, K> mod p^(2m+1), or sweep all X");
  liftexc->add_option("--ell", ell, "odd prime")->required();
  liftexc->add_option("--m", m, "m >= 1")->required()->check(CLI::PositiveNumber);
  auto* xopt = liftexc->add_option("--x", x, "matrix \"[[a,b],[c,d]]\"");
  auto* sopt = liftexc->add_flag("--sweep", sweep, "exhaustive sweep");
  xopt->excludes(sopt);

  std::string fixture;
  std::uint64_t x0 = 0;
  auto* genus = app.add_subcommand("genus", "genus of a fixture group or of X0(N)");
  auto* fopt = genus->add_option("--fixture", fixture, "group fixture JSON");
  auto* nopt = genus->add_option("--x0", x0, "level N")->check(CLI::PositiveNumber);
  fopt->excludes(nopt);

  std::vector<std::string> specs;
  auto* fiber = app.add_subcommand("fiber", "genus of a fiber product over the j-line");
  fiber->add_option("--fixtures", specs, "factors: x0:N, h:5, h:7, r:L:M, file[:label]")->required();

  std::string table = "table1.json";
  auto* qlist = app.add_subcommand("assemble-q-list", "levels with exceptional rational points");
  qlist->add_option("--table", table, "published 2-adic groups");

  std::string flags;
  std::int64_t disc = 0;
  std::uint64_t big_n = 0;
  auto* cm = app.add_subcommand("cm", "CM prime-power cases and the A*B*C split");
  cm->require_subcommand(1, 1);
  cm->fallthrough();
  auto* cmc = cm->add_subcommand("classify", "case for l^n");
  cmc->add_option("--ell", ell, "prime")->required();
  cmc->add_option("--n", n, "exponent")->required()->check(CLI::PositiveNumber);
  cmc->add_option("--disc", disc, "fundamental discriminant < 0")->required();
  cmc->add_option("--flags", flags, "field flags k=v,...");
  auto* cma = cm->add_subcommand("abc", "factor N");
  cma->add_option("--N", big_n, "level")->required()->check(CLI::PositiveNumber);
  cma->add_option("--disc", disc, "fundamental discriminant < 0")->required();
  cma->add_option("--flags", flags, "field flags k=v,...");

  std::string file;
  unsigned exp = 0;
  auto* frob = app.add_subcommand("frob", "first Frobenius witness in a_p data");
  frob->add_option("--file", file, "a_p file")->required();
  frob->add_option("--prime", ell, "prime l")->required();
  frob->add_option("--exp", exp, "exponent n")->required()->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run the property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (genus->parsed() && fixture.empty() && x0 == 0) {
    std::cerr << "genus: give --fixture or --x0\n";
    return kUsage;
  }
  if (liftexc->parsed() && x.empty() && !sweep) {
    std::cerr << "liftexc: give --x or --sweep\n";
    return kUsage;
  }

  lgp_context* ctx = nullptr;
  if (lgp_context_new(&ctx) != LGP_OK) return kRuntime;
  lgp_context_set_threads(ctx, common.threads);
  lgp_context_set_cap(ctx, common.cap);
  lgp_context_set_allow_long(ctx, common.allow_long);
  if (!common.checkpoint.empty()) lgp_context_set_checkpoint(ctx, common.checkpoint.c_str());

  lgp_report* rep = nullptr;
  lgp_status st = LGP_OK;
  std::string cmd = app.get_subcommands().front()->get_name();
  if (exc2->parsed()) {
    st = lgp_exc2(ctx, n, &rep);
  } else if (liftexc->parsed()) {
    st = sweep ? lgp_liftexc_sweep(ctx, ell, m, &rep) : lgp_liftexc_classify(ctx, ell, m, x.c_str(), &rep);
  } else if (genus->parsed()) {
    st = fixture.empty() ? lgp_genus_x0(ctx, x0, &rep) : lgp_genus_fixture(ctx, fixture.c_str(), &rep);
  } else if (fiber->parsed()) {
    std::vector<const char*> raw;
    for (const auto& s : specs) raw.push_back(s.c_str());
    st = lgp_fiber(ctx, raw.data(), raw.size(), &rep);
  } else if (qlist->parsed()) {
    st = lgp_assemble_q_list(ctx, table.c_str(), &rep);
  } else if (cmc->parsed()) {
    st = lgp_cm_classify(ctx, ell, n, disc, flags.c_str(), &rep);
  } else if (cma->parsed()) {
    st = lgp_cm_abc(ctx, big_n, disc, flags.c_str(), &rep);
  } else if (frob->parsed()) {
    st = lgp_frob(ctx, file.c_str(), ell, exp, &rep);
  } else if (verify->parsed()) {
    st = lgp_verify(ctx, &rep);
  }

  if (rep) {
    std::string text = lgp_report_json(rep);
    if (det_only && exc2->parsed()) {
      // the library reports both kinds; rational points need det surjective
      Json j = Json::parse(text);
      Json kept = Json::array();
      for (const auto& r : j["rows"])
        if (r["det_surjective"].get<bool>()) kept.push_back(r);
      j["count"] = kept.size();
      j["rows"] = kept;
      text = j.dump(2);
    }
    if (common.json) std::cout << text << "\n";
    else print_text(cmd, Json::parse(text));
    lgp_report_free(rep);
  }
  if (st != LGP_OK) {
    std::cerr << "error (" << lgp_status_name(st) << "): " << lgp_last_error() << "\n";
    if (st == LGP_E_TOO_LONG) std::cerr << "rerun with --allow-long to proceed\n";
    if (exit_for(st) == kRuntime && !common.checkpoint.empty())
      std::cerr << "checkpoint: " << common.checkpoint << "\n";
  }
  lgp_context_free(ctx);
  return exit_for(st);
}
