#ifndef FRACGRUSS_H
#define FRACGRUSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum FgStatus {
  FG_STATUS_OK = 0,
  FG_STATUS_NULL_POINTER = 1,
  FG_STATUS_INVALID_UTF8 = 2,
  FG_STATUS_PARSE = 3,
  FG_STATUS_DOMAIN = 4,
  FG_STATUS_EVALUATION = 5,
  FG_STATUS_PRECONDITION = 6,
  FG_STATUS_UNSUPPORTED = 7,
  FG_STATUS_INCONSISTENCY = 8,
  FG_STATUS_UNKNOWN_THEOREM = 9,
  FG_STATUS_CONFIG = 10,
  FG_STATUS_NO_CONVERGENCE = 11,
  FG_STATUS_PANIC = 99,
} FgStatus;

// Opaque handle to a parsed function.
typedef struct FgFunction FgFunction;

// Operator parameters `(ρ, α, β, η, k)`.
typedef struct FgParams {
  double rho;
  double alpha;
  double beta;
  double eta;
  double k;
} FgParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a function in prefix form, e.g. `"(add (pow t 2) (const 1))"`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum FgStatus fg_function_parse(const char *text, struct FgFunction **out);

// Releases a handle from [`fg_function_parse`]. Null is ignored.
//
// # Safety
// `f` must come from [`fg_function_parse`] and not be freed twice.
void fg_function_free(struct FgFunction *f);

// Canonical text of a function; free with [`fg_string_free`].
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum FgStatus fg_function_to_string(const struct FgFunction *f, char **out);

// # Safety
// `f` must be a live handle; `out` must be writable.
enum FgStatus fg_function_eval(const struct FgFunction *f, double tau, double *out);

// # Safety
// `out` must be writable.
enum FgStatus fg_log_gamma(double x, double *out);

// # Safety
// `p` must point to valid parameters; `out` must be writable.
enum FgStatus fg_lambda_value(const struct FgParams *p, double x, double *out);

// Left-sided integral with `n` quadrature nodes.
//
// # Safety
// Pointers must be valid as for the other calls.
enum FgStatus fg_left_integral(const struct FgFunction *f,
                               const struct FgParams *p,
                               double x,
                               size_t n,
                               double *out);

// Right-sided integral on `[x, b]` with `n` quadrature nodes.
//
// # Safety
// Pointers must be valid as for the other calls.
enum FgStatus fg_right_integral(const struct FgFunction *f,
                                const struct FgParams *p,
                                double x,
                                double b,
                                size_t n,
                                double *out);

// Exact left-sided value on `τ^(ρs)`.
//
// # Safety
// Pointers must be valid as for the other calls.
enum FgStatus fg_power_closed_form(double s, const struct FgParams *p, double x, double *out);

// Runs one checker on a JSON case and returns the JSON report.
//
// `holds` receives 1 or 0. A violated inequality is still `FG_STATUS_OK`.
//
// # Safety
// Strings must be nul-terminated; out-pointers must be writable.
enum FgStatus fg_check_json(const char *theorem,
                            const char *case_json,
                            char **report_json,
                            int *holds);

// Runs a suite from a JSON config and returns the JSON report.
//
// # Safety
// As for [`fg_check_json`].
enum FgStatus fg_run_suite_json(const char *config_json, char **report_json, int *all_hold);

// Message of the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call on this thread.
const char *fg_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void fg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACGRUSS_H */
