#ifndef MUTSPACE_H
#define MUTSPACE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes.
 */
typedef enum MsStatus {
  MS_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  MS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  MS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input: syntax, schema, unknown ids, policies or metrics.
   */
  MS_STATUS_INVALID_INPUT = 3,
  /**
   * A program with a required role is missing or has the wrong role.
   */
  MS_STATUS_ROLE = 4,
  /**
   * The explicit lattice would exceed its dimension limit.
   */
  MS_STATUS_CAPACITY = 5,
  /**
   * The result does not fit the requested integer type.
   */
  MS_STATUS_OVERFLOW = 6,
  /**
   * An internal error; please report it.
   */
  MS_STATUS_INTERNAL = 7,
} MsStatus;

/**
 * A behavior matrix: programs by tests, each cell a behavior token.
 */
typedef struct MsBehaviorMatrix MsBehaviorMatrix;

/**
 * A boolean tests-by-mutants kill matrix.
 */
typedef struct MsKillMatrix MsKillMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread; empty after a
 * success. The pointer stays valid until the next call on this thread.
 */
const char *ms_last_error(void);

/**
 * Library version as a static string.
 */
const char *ms_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ms_string_free(char *s);

/**
 * Parses a behavior matrix from its JSON interchange form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum MsStatus ms_behavior_matrix_from_json(const char *json, struct MsBehaviorMatrix **out);

/**
 * Executes `source` and its mutants on a JSON test suite. `spec_json`
 * (expected outputs) and `operators` (for example `"AOR,ROR"`; all when
 * NULL) are optional.
 *
 * # Safety
 * String arguments must be NUL-terminated or NULL where optional; `out`
 * must be writable.
 */
enum MsStatus ms_behavior_matrix_from_program(const char *source,
                                              const char *tests_json,
                                              const char *spec_json,
                                              const char *operators,
                                              uint64_t budget,
                                              bool tracing,
                                              struct MsBehaviorMatrix **out);

/**
 * Serializes a behavior matrix to JSON.
 *
 * # Safety
 * `bm` must be a live handle; `out` must be writable.
 */
enum MsStatus ms_behavior_matrix_to_json(const struct MsBehaviorMatrix *bm, char **out);

/**
 * # Safety
 * `bm` must be NULL or a live handle, and is invalid afterwards.
 */
void ms_behavior_matrix_free(struct MsBehaviorMatrix *bm);

/**
 * Parses a kill matrix CSV (`test,m1,...` header, one 0/1 row per test).
 *
 * # Safety
 * `csv` must be NUL-terminated; `out` must be writable.
 */
enum MsStatus ms_kill_matrix_from_csv(const char *csv, struct MsKillMatrix **out);

/**
 * Derives the kill matrix of every mutant row relative to `origin` (the
 * `original` row when NULL) under a differentiator policy (`output` when
 * NULL). `epsilon` is used by the `numeric` policy; pass NaN for none.
 *
 * # Safety
 * `bm` must be a live handle; strings NUL-terminated or NULL; `out`
 * writable.
 */
enum MsStatus ms_kill_matrix_from_behavior(const struct MsBehaviorMatrix *bm,
                                           const char *origin,
                                           const char *policy,
                                           double epsilon,
                                           struct MsKillMatrix **out);

/**
 * # Safety
 * `km` must be a live handle; `out` must be writable.
 */
enum MsStatus ms_kill_matrix_to_csv(const struct MsKillMatrix *km, char **out);

/**
 * # Safety
 * `km` must be NULL or a live handle, and is invalid afterwards.
 */
void ms_kill_matrix_free(struct MsKillMatrix *km);

/**
 * Whether mutant `mx` dynamically subsumes `my`.
 *
 * # Safety
 * `km` must be a live handle; ids NUL-terminated; `out` writable.
 */
enum MsStatus ms_kill_matrix_subsumes(const struct MsKillMatrix *km,
                                      const char *mx,
                                      const char *my,
                                      bool *out);

/**
 * Minimal mutant set as JSON: `{"minimal", "roots", "live",
 * "reductionRatio"}`.
 *
 * # Safety
 * `km` must be a live handle; `out` must be writable.
 */
enum MsStatus ms_minimal_set_json(const struct MsKillMatrix *km, char **out);

/**
 * The subsumption graph of a kill matrix in DOT.
 *
 * # Safety
 * `km` must be a live handle; `out` must be writable.
 */
enum MsStatus ms_dmsg_dot(const struct MsKillMatrix *km, char **out);

/**
 * The unannotated `n`-dimensional deviance lattice in DOT.
 *
 * # Safety
 * `out` must be writable.
 */
enum MsStatus ms_pdl_dot(uintptr_t n, char **out);

/**
 * Upper bound on the minimal mutant set size for `n` tests, as a
 * `uint64_t`. Returns `MS_STATUS_OVERFLOW` when it does not fit; use
 * [`ms_max_minimal_size_decimal`] then.
 *
 * # Safety
 * `out` must be writable.
 */
enum MsStatus ms_max_minimal_size(uint64_t n, uint64_t *out);

/**
 * [`ms_max_minimal_size`] as a decimal string of any length.
 *
 * # Safety
 * `out` must be writable.
 */
enum MsStatus ms_max_minimal_size_decimal(uint64_t n, char **out);

/**
 * Suspiciousness report JSON for every mutant row. `method` is `fix`,
 * `flt-ochiai` or `flt-jaccard`; each mutant is ranked as its own
 * location. The matrix needs `spec` and `original` rows.
 *
 * # Safety
 * `bm` must be a live handle; strings NUL-terminated or NULL where
 * optional; `out` writable.
 */
enum MsStatus ms_mbfl_report_json(const struct MsBehaviorMatrix *bm,
                                  const char *method,
                                  const char *policy,
                                  double epsilon,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MUTSPACE_H */
