/* Copyright 2026 The okamoto authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the okamoto library. Every function returns an okm_status;
 * on failure okm_last_error() describes the problem for the calling thread.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function.
 */
#ifndef OKAMOTO_OKAMOTO_H
#define OKAMOTO_OKAMOTO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(OKM_BUILDING_LIBRARY)
#define OKM_API __declspec(dllexport)
#else
#define OKM_API __declspec(dllimport)
#endif
#else
#define OKM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum okm_status {
  OKM_OK = 0,
  OKM_E_DOMAIN = 1,    /* argument outside the documented domain */
  OKM_E_PARSE = 2,     /* malformed point specification */
  OKM_E_TOLERANCE = 3, /* requested accuracy not reachable within the term budget */
  OKM_E_BUDGET = 4,    /* request exceeds a work budget */
  OKM_E_IO = 5,
  OKM_E_INTERNAL = 6
} okm_status;

typedef enum okm_format { OKM_FORMAT_JSON = 0, OKM_FORMAT_CSV = 1 } okm_format;

typedef struct okm_source okm_source;
typedef struct okm_text okm_text;

typedef struct okm_eval_result {
  double value;
  double err_bound;
  size_t terms;
  int exact;
} okm_eval_result;

OKM_API const char* okm_version(void);
/* Machine-readable name of a status ("domain", "parse", ...). */
OKM_API const char* okm_status_name(okm_status status);
/* Message of the last failure on this thread; empty after success. */
OKM_API const char* okm_last_error(void);

/* Text results. */
OKM_API const char* okm_text_data(const okm_text* text);
OKM_API size_t okm_text_size(const okm_text* text);
OKM_API void okm_text_free(okm_text* text);
/* Writes the text to path, replacing any existing file. */
OKM_API okm_status okm_text_write(const okm_text* text, const char* path);

/* Points of [0,1]: "F:digits", "P:pre|period", "G:family:key=val,...", "R:p/q". */
OKM_API okm_status okm_source_parse(const char* spec, okm_source** out);
OKM_API okm_status okm_source_from_rational(int64_t p, int64_t q, okm_source** out);
OKM_API void okm_source_free(okm_source* source);
OKM_API okm_status okm_source_format(const okm_source* source, okm_text** out);
/* Writes x_1 ... x_n into out[0 .. n-1]. */
OKM_API okm_status okm_source_digits(const okm_source* source, size_t n, uint8_t* out);

/* M_{k,a}(x) to absolute accuracy tol (k = 0 gives F_a). */
OKM_API okm_status okm_eval(int k, double a, const okm_source* x, double tol, okm_eval_result* out);
OKM_API okm_status okm_eval_fe(int k, double a, const okm_source* x, size_t depth, okm_eval_result* out);
OKM_API okm_status okm_exact_at_rational(int k, double a, unsigned n, uint64_t j, double* out);
OKM_API okm_status okm_eval_json(int k, double a, const okm_source* x, double tol, okm_text** out);

/* Samples of M_{k,a} at j/3^n as CSV, 1 <= n <= 12. */
OKM_API okm_status okm_graph_csv(int k, double a, unsigned n, okm_text** out);

typedef enum okm_verdict {
  OKM_FINITE_ZERO = 0,
  OKM_PLUS_INFINITY = 1,
  OKM_MINUS_INFINITY = 2,
  OKM_NOT_DIFFERENTIABLE = 3,
  OKM_INCONCLUSIVE = 4
} okm_verdict;

/* horizon = 0 selects the default. proved is 1 for certified verdicts. */
OKM_API okm_status okm_classify(int k, double a, const okm_source* x, size_t horizon, okm_verdict* verdict,
                                int* proved);
OKM_API okm_status okm_classify_json(int k, double a, const okm_source* x, size_t horizon, okm_text** out);

/* Pass a NaN parameter to omit the scaled thresholds. */
OKM_API okm_status okm_qpoly_json(int k, double a, okm_text** out);
OKM_API okm_status okm_constants_json(okm_text** out);

OKM_API okm_status okm_boxdim(int k, double a, unsigned n_min, unsigned n_max, unsigned m, okm_format format,
                              okm_text** out);
/* cycles = 0 skips the cycle simulation. */
OKM_API okm_status okm_markov_json(double a, double p, size_t cycles, uint64_t seed, okm_text** out);
OKM_API okm_status okm_lil_json(double a, double p, size_t steps, size_t trials, uint64_t seed, okm_text** out);
/* points >= 2 equally spaced parameters in [a_lo, a_hi]. */
OKM_API okm_status okm_curve_csv(double a_lo, double a_hi, size_t points, okm_text** out);

#ifdef __cplusplus
}
#endif

#endif /* OKAMOTO_OKAMOTO_H */
