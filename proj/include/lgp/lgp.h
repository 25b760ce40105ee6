/* Copyright 2026 The isogeny-lgp Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to liblgp. Every call returns an lgp_status; on failure the
 * message is available from lgp_last_error() on the calling thread until the
 * next call. Reports come back as JSON text owned by an lgp_report handle.
 */
#ifndef LGP_LGP_H_
#define LGP_LGP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LGP_API __declspec(dllexport)
#else
#define LGP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the library's internal error categories. */
typedef enum lgp_status {
  LGP_OK = 0,
  LGP_E_INVALID_ARGUMENT = 1,
  LGP_E_CAPACITY = 2,
  LGP_E_PARSE = 3,
  LGP_E_DATA = 4,
  LGP_E_LIFT_FAILURE = 5,
  LGP_E_NON_SEPARABLE = 6,
  LGP_E_SINGULAR_CONJUGATOR = 7,
  LGP_E_REDUCTION = 8,
  LGP_E_STRUCTURE = 9,
  LGP_E_CONTRACT = 10,
  LGP_E_NOT_POTENTIALLY_EXCEPTIONAL = 11,
  LGP_E_LEVEL = 12,
  LGP_E_BAD_REDUCTION = 13,
  LGP_E_INTERNAL = 14,
  LGP_E_VERIFICATION_FAILED = 15,
  /* n = 6 search requested without lgp_context_set_allow_long */
  LGP_E_TOO_LONG = 16
} lgp_status;

typedef struct lgp_context lgp_context;
typedef struct lgp_report lgp_report;
typedef struct lgp_group lgp_group;

LGP_API const char* lgp_version(void);
LGP_API const char* lgp_status_name(lgp_status status);
/* Message for the most recent failure on this thread, "" if none. */
LGP_API const char* lgp_last_error(void);

LGP_API lgp_status lgp_context_new(lgp_context** out);
LGP_API void lgp_context_free(lgp_context* ctx);
LGP_API lgp_status lgp_context_set_threads(lgp_context* ctx, unsigned threads);
/* Element cap for every closure; 0 restores the default of 2^24. */
LGP_API lgp_status lgp_context_set_cap(lgp_context* ctx, size_t cap);
/* Directory for bare fixture names; NULL restores the default. */
LGP_API lgp_status lgp_context_set_fixture_dir(lgp_context* ctx, const char* dir);
LGP_API lgp_status lgp_context_set_allow_long(lgp_context* ctx, int allow);
/* Search state is written here after each completed level; NULL disables. */
LGP_API lgp_status lgp_context_set_checkpoint(lgp_context* ctx, const char* path);

/* Report text stays valid until lgp_report_free. */
LGP_API const char* lgp_report_json(const lgp_report* report);
LGP_API void lgp_report_free(lgp_report* report);

/* Group generated by matrices "[[a,b],[c,d]]" mod prime^exponent. */
LGP_API lgp_status lgp_group_from_generators(const lgp_context* ctx, uint64_t prime, unsigned exponent,
                                             const char* const* generators, size_t count, lgp_group** out);
LGP_API void lgp_group_free(lgp_group* group);
LGP_API lgp_status lgp_group_order(const lgp_group* group, uint64_t* out);
LGP_API lgp_status lgp_group_genus(const lgp_group* group, uint64_t* out);
LGP_API lgp_status lgp_group_is_exceptional_2adic(const lgp_group* group, int* out);

/* Maximal exceptional subgroups of GL2(Z/2^n). */
LGP_API lgp_status lgp_exc2(const lgp_context* ctx, unsigned n, lgp_report** out);
/* Rough single-thread seconds for lgp_exc2(n), for refusing long runs. */
LGP_API double lgp_exc2_estimated_seconds(unsigned n);

LGP_API lgp_status lgp_liftexc_classify(const lgp_context* ctx, uint64_t ell, unsigned m, const char* matrix,
                                        lgp_report** out);
LGP_API lgp_status lgp_liftexc_sweep(const lgp_context* ctx, uint64_t ell, unsigned m, lgp_report** out);

LGP_API lgp_status lgp_genus_fixture(const lgp_context* ctx, const char* path, lgp_report** out);
LGP_API lgp_status lgp_genus_x0(const lgp_context* ctx, uint64_t n, lgp_report** out);
/* Factor specs: "x0:N", "h:5", "h:7", "r:L:M" or "file[:label]". */
LGP_API lgp_status lgp_fiber(const lgp_context* ctx, const char* const* specs, size_t count, lgp_report** out);
LGP_API lgp_status lgp_assemble_q_list(const lgp_context* ctx, const char* table_path, lgp_report** out);

/* flags: "f_in_k=1,sqrt_ell_in_k=0,...", may be NULL or "". */
LGP_API lgp_status lgp_cm_classify(const lgp_context* ctx, uint64_t ell, unsigned n, int64_t disc, const char* flags,
                                   lgp_report** out);
LGP_API lgp_status lgp_cm_abc(const lgp_context* ctx, uint64_t N, int64_t disc, const char* flags,
                              lgp_report** out);

LGP_API lgp_status lgp_frob(const lgp_context* ctx, const char* path, uint64_t ell, unsigned n, lgp_report** out);

/* Runs the property suite. The report is always produced when the suite
 * ran; the status is LGP_E_VERIFICATION_FAILED if any check failed. */
LGP_API lgp_status lgp_verify(const lgp_context* ctx, lgp_report** out);

#ifdef __cplusplus
}
#endif

#endif /* LGP_LGP_H_ */
