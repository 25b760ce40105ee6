// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/lgp.h"

#include <filesystem>
#include <new>
#include <string>
#include <vector>

#include "lgp/error.hpp"
#include "lgp/fixtures.hpp"
#include "lgp/genus.hpp"
#include "lgp/report.hpp"
#include "lgp/search.hpp"
#include "lgp/verify.hpp"

struct lgp_context {
  unsigned threads = 1;
  std::size_t cap = lgp::MatGroup::kDefaultCap;
  std::string fixture_dir;
  bool allow_long = false;
  std::string checkpoint;
};

struct lgp_report {
  std::string json;
};

struct lgp_group {
  lgp::MatGroup group;
};

namespace {

thread_local std::string last_error;

lgp_status set_error(lgp_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs fn, mapping exceptions onto status codes.
template <class Fn>
lgp_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const lgp::Error& e) {
    return set_error(static_cast<lgp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LGP_E_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LGP_E_INTERNAL, e.what());
  }
}

const lgp_context& ctx_or_default(const lgp_context* ctx) {
  static const lgp_context fallback;
  return ctx ? *ctx : fallback;
}

std::string locate(const lgp_context& ctx, const std::string& name) {
  namespace fs = std::filesystem;
  if (ctx.fixture_dir.empty() || fs::path(name).is_absolute() || fs::exists(name)) return lgp::resolve_fixture(name);
  return (fs::path(ctx.fixture_dir) / name).string();
}

lgp_status emit(const lgp::Json& j, lgp_report** out) {
  *out = new lgp_report{j.dump(2)};
  return LGP_OK;
}

#define LGP_REQUIRE(cond, what) \
  if (!(cond)) return set_error(LGP_E_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* lgp_version(void) { return "0.3.0"; }

const char* lgp_status_name(lgp_status status) {
  if (status == LGP_OK) return "ok";
  if (status == LGP_E_TOO_LONG) return "too-long";
  if (status >= LGP_E_INVALID_ARGUMENT && status <= LGP_E_VERIFICATION_FAILED)
    return lgp::error_code_name(static_cast<lgp::ErrorCode>(status));
  return "unknown";
}

const char* lgp_last_error(void) { return last_error.c_str(); }

lgp_status lgp_context_new(lgp_context** out) {
  LGP_REQUIRE(out, "null output pointer");
  return guarded([&] {
    *out = new lgp_context;
    return LGP_OK;
  });
}

void lgp_context_free(lgp_context* ctx) { delete ctx; }

lgp_status lgp_context_set_threads(lgp_context* ctx, unsigned threads) {
  LGP_REQUIRE(ctx, "null context");
  LGP_REQUIRE(threads >= 1 && threads <= 1024, "threads must be in [1, 1024]");
  ctx->threads = threads;
  return LGP_OK;
}

lgp_status lgp_context_set_cap(lgp_context* ctx, size_t cap) {
  LGP_REQUIRE(ctx, "null context");
  ctx->cap = cap == 0 ? lgp::MatGroup::kDefaultCap : cap;
  return LGP_OK;
}

lgp_status lgp_context_set_fixture_dir(lgp_context* ctx, const char* dir) {
  LGP_REQUIRE(ctx, "null context");
  ctx->fixture_dir = dir ? dir : "";
  return LGP_OK;
}

lgp_status lgp_context_set_allow_long(lgp_context* ctx, int allow) {
  LGP_REQUIRE(ctx, "null context");
  ctx->allow_long = allow != 0;
  return LGP_OK;
}

lgp_status lgp_context_set_checkpoint(lgp_context* ctx, const char* path) {
  LGP_REQUIRE(ctx, "null context");
  ctx->checkpoint = path ? path : "";
  return LGP_OK;
}

const char* lgp_report_json(const lgp_report* report) { return report ? report->json.c_str() : ""; }

void lgp_report_free(lgp_report* report) { delete report; }

lgp_status lgp_group_from_generators(const lgp_context* ctx, uint64_t prime, unsigned exponent,
                                     const char* const* generators, size_t count, lgp_group** out) {
  LGP_REQUIRE(out, "null output pointer");
  LGP_REQUIRE(count == 0 || generators, "null generator list");
  return guarded([&] {
    lgp::GroupFixture fx;
    fx.prime = prime;
    fx.exponent = exponent;
    for (size_t i = 0; i < count; ++i) {
      if (!generators[i]) return set_error(LGP_E_INVALID_ARGUMENT, "null generator string");
      fx.generators.emplace_back(generators[i]);
    }
    *out = new lgp_group{lgp::close_fixture(fx, ctx_or_default(ctx).cap)};
    return LGP_OK;
  });
}

void lgp_group_free(lgp_group* group) { delete group; }

lgp_status lgp_group_order(const lgp_group* group, uint64_t* out) {
  LGP_REQUIRE(group && out, "null argument");
  *out = group->group.order();
  return LGP_OK;
}

lgp_status lgp_group_genus(const lgp_group* group, uint64_t* out) {
  LGP_REQUIRE(group && out, "null argument");
  return guarded([&] {
    *out = lgp::genus_of(group->group).genus;
    return LGP_OK;
  });
}

lgp_status lgp_group_is_exceptional_2adic(const lgp_group* group, int* out) {
  LGP_REQUIRE(group && out, "null argument");
  return guarded([&] {
    *out = lgp::is_exceptional_2adic(group->group) ? 1 : 0;
    return LGP_OK;
  });
}

double lgp_exc2_estimated_seconds(unsigned n) {
  // measured on one core; roughly x15 per level
  static const double kSeconds[] = {0, 0.01, 0.01, 0.05, 0.2, 8, 120};
  if (n < sizeof(kSeconds) / sizeof(kSeconds[0])) return kSeconds[n];
  return -1;
}

lgp_status lgp_exc2(const lgp_context* ctx, unsigned n, lgp_report** out) {
  LGP_REQUIRE(out, "null output pointer");
  LGP_REQUIRE(n >= 1 && n <= 6, "n must be in [1, 6]");
  const auto& c = ctx_or_default(ctx);
  if (n == 6 && !c.allow_long)
    return set_error(LGP_E_TOO_LONG, "n = 6 takes about " + std::to_string(static_cast<int>(lgp_exc2_estimated_seconds(6))) +
                                         " s single-threaded; enable long runs to proceed");
  return guarded([&] {
    lgp::SearchOptions opt;
    opt.threads = c.threads;
    opt.cap = c.cap;
    opt.checkpoint_path = c.checkpoint;
    return emit(lgp::exc2_report(n, opt), out);
  });
}

lgp_status lgp_liftexc_classify(const lgp_context*, uint64_t ell, unsigned m, const char* matrix, lgp_report** out) {
  LGP_REQUIRE(out && matrix, "null argument");
  return guarded([&] { return emit(lgp::liftexc_classify_report(ell, m, matrix), out); });
}

lgp_status lgp_liftexc_sweep(const lgp_context*, uint64_t ell, unsigned m, lgp_report** out) {
  LGP_REQUIRE(out, "null output pointer");
  return guarded([&] { return emit(lgp::liftexc_sweep_report(ell, m), out); });
}

lgp_status lgp_genus_fixture(const lgp_context* ctx, const char* path, lgp_report** out) {
  LGP_REQUIRE(out && path, "null argument");
  return guarded([&] { return emit(lgp::genus_fixture_report(locate(ctx_or_default(ctx), path)), out); });
}

lgp_status lgp_genus_x0(const lgp_context*, uint64_t n, lgp_report** out) {
  LGP_REQUIRE(out, "null output pointer");
  LGP_REQUIRE(n >= 1, "level must be positive");
  return guarded([&] { return emit(lgp::genus_x0_report(n), out); });
}

lgp_status lgp_fiber(const lgp_context* ctx, const char* const* specs, size_t count, lgp_report** out) {
  LGP_REQUIRE(out && (specs || count == 0), "null argument");
  return guarded([&] {
    const auto& c = ctx_or_default(ctx);
    std::vector<std::string> list;
    for (size_t i = 0; i < count; ++i) {
      if (!specs[i]) return set_error(LGP_E_INVALID_ARGUMENT, "null factor spec");
      std::string s = specs[i];
      const bool builtin = s.rfind("x0:", 0) == 0 || s.rfind("h:", 0) == 0 || s.rfind("r:", 0) == 0;
      if (!builtin) {
        const auto colon = s.find(':');
        const std::string file = s.substr(0, colon);
        s = locate(c, file) + (colon == std::string::npos ? "" : s.substr(colon));
      }
      list.push_back(s);
    }
    auto j = lgp::fiber_report(list);
    // report the specs as given, not the resolved paths
    auto& names = j["rows"][0]["factors"];
    for (size_t i = 0; i < count; ++i) names[i] = specs[i];
    return emit(j, out);
  });
}

lgp_status lgp_assemble_q_list(const lgp_context* ctx, const char* table_path, lgp_report** out) {
  LGP_REQUIRE(out, "null output pointer");
  return guarded([&] {
    const std::string table = table_path && *table_path ? table_path : "table1.json";
    return emit(lgp::q_list_report(locate(ctx_or_default(ctx), table)), out);
  });
}

lgp_status lgp_cm_classify(const lgp_context*, uint64_t ell, unsigned n, int64_t disc, const char* flags,
                           lgp_report** out) {
  LGP_REQUIRE(out, "null output pointer");
  return guarded([&] { return emit(lgp::cm_classify_report(ell, n, disc, flags ? flags : ""), out); });
}

lgp_status lgp_cm_abc(const lgp_context*, uint64_t N, int64_t disc, const char* flags, lgp_report** out) {
  LGP_REQUIRE(out, "null output pointer");
  LGP_REQUIRE(N >= 1, "N must be positive");
  return guarded([&] { return emit(lgp::cm_abc_report(N, disc, flags ? flags : ""), out); });
}

lgp_status lgp_frob(const lgp_context* ctx, const char* path, uint64_t ell, unsigned n, lgp_report** out) {
  LGP_REQUIRE(out && path, "null argument");
  return guarded([&] { return emit(lgp::frob_report(locate(ctx_or_default(ctx), path), ell, n), out); });
}

lgp_status lgp_verify(const lgp_context* ctx, lgp_report** out) {
  LGP_REQUIRE(out, "null output pointer");
  return guarded([&] {
    const auto& c = ctx_or_default(ctx);
    lgp::VerifyOptions opt;
    opt.threads = c.threads;
    opt.long_checks = c.allow_long;
    opt.fixture_dir = c.fixture_dir;
    auto results = lgp::run_verification(opt);
    lgp::Json checks = lgp::Json::array();
    for (const auto& r : results)
      checks.push_back({{"module", r.module},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"informational", r.informational},
                        {"detail", r.detail}});
    const bool ok = lgp::all_passed(results);
    emit(lgp::Json{{"passed", ok}, {"checks", checks}}, out);
    return ok ? LGP_OK : set_error(LGP_E_VERIFICATION_FAILED, "one or more checks failed");
  });
}

}  // extern "C"
