#ifndef THETADET_H
#define THETADET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TD_API __declspec(dllexport)
#else
#define TD_API __attribute__((visibility("default")))
#endif

typedef enum td_status {
  TD_OK = 0,
  TD_ERR_DOMAIN = 1,
  TD_ERR_USAGE = 2,
  TD_ERR_CONSTRAINT = 3,
  TD_ERR_INVERT = 4,
  TD_ERR_NORMALIZATION = 5,
  TD_ERR_UNKNOWN_ID = 6,
  TD_ERR_DEGENERATE = 7,
  TD_ERR_INTERNAL = 8,
  TD_ERR_NULL_ARG = 9,
  TD_ERR_PARSE = 10
} td_status;

typedef enum td_expand_kind { TD_EXPAND_W = 0, TD_EXPAND_MDP = 1, TD_EXPAND_MLC = 2 } td_expand_kind;

/* Truncated q-series with rational Laurent polynomial coefficients. */
typedef struct td_series td_series;

/* Message of the last failed call on this thread ("" if none). */
TD_API const char* td_last_error(void);
TD_API const char* td_version(void);

/* Strings returned through char** are owned by the caller. */
TD_API void td_string_free(char* s);

/* Registry as a JSON array of identity records. */
TD_API td_status td_list_json(char** out);
TD_API td_status td_identity_json(const char* id, char** out);

/* W_R, the determinant of the W_R matrix form, or a Macdonald sum
   (version 1 or 2; ignored for the other kinds). family: A B Bvee C Cvee BC D. */
TD_API td_status td_expand(td_expand_kind kind, const char* family, int n, int order, int version,
                           td_series** out);
TD_API void td_series_free(td_series* s);
TD_API td_status td_series_to_json(const td_series* s, char** out);
TD_API td_status td_series_to_text(const td_series* s, char** out);
TD_API td_status td_series_from_json(const char* json, td_series** out);
/* *equal = 1 when a and b agree up to the smaller order. */
TD_API td_status td_series_equal(const td_series* a, const td_series* b, int* equal);
TD_API int td_series_order(const td_series* s);
TD_API int td_series_nvars(const td_series* s);

/* Verification. *pass is 1 or 0; *report receives the JSON report.
   TD_ERR_DEGENERATE is returned when no generic binding was found. */
TD_API td_status td_verify_exact(const char* id, int n, int order, uint64_t seed, int* pass, char** report);
TD_API td_status td_verify_symbolic(const char* id, int n, int order, int* pass, char** report);
/* extended != 0 evaluates in 256-bit precision. */
TD_API td_status td_verify_numeric(const char* id, int n, uint64_t seed, double p_re, double p_im, double tol,
                                   int extended, int* pass, char** report);
TD_API td_status td_verify_agreement(const char* id, int n, uint64_t seed, double p, double tol, int* pass,
                                     char** report);

/* Acceptance criterion 1..11; threads = 0 uses all cores. line (may be NULL)
   receives the one-line summary. */
TD_API td_status td_run_criterion(int criterion, int threads, int* pass, char** report, char** line);
TD_API td_status td_criterion_title(int criterion, char** out);

#ifdef __cplusplus
}
#endif

#endif
