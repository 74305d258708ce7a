/* C interface to the ssp shortest-superstring solvers. */

#ifndef SSP_H
#define SSP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an API call.
 */
enum SspStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  SSP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SSP_STATUS_NULL_ARGUMENT = 1,
  /**
   * Input strings were rejected (empty set, empty string, bad encoding).
   */
  SSP_STATUS_INVALID_INPUT = 2,
  /**
   * The instance exceeds the selected solver's size limit.
   */
  SSP_STATUS_TOO_LARGE = 3,
  /**
   * Unexpected internal failure.
   */
  SSP_STATUS_INTERNAL = 4,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum SspStatus SspStatus;
#else
typedef int32_t SspStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Solver selection for [`SspOptions`].
 */
enum SspMode
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  SSP_MODE_CLASSICAL = 0,
  SSP_MODE_HYBRID = 1,
  SSP_MODE_BRUTE = 2,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum SspMode SspMode;
#else
typedef int32_t SspMode;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Ledger level selector for `ssp_solution_level_queries`.
 */
enum SspLevel
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  SSP_LEVEL_NESTED = 0,
  SSP_LEVEL_MIDDLE = 1,
  SSP_LEVEL_FINAL = 2,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum SspLevel SspLevel;
#else
typedef int32_t SspLevel;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Opaque solve result; free with `ssp_solution_free`.
 */
typedef struct SspSolution SspSolution;

/**
 * Solve settings; initialize with `ssp_options_init` and override fields.
 */
typedef struct SspOptions {
  /**
   * One of the `SspMode` values.
   */
  int32_t mode;
  /**
   * Split parameter of the hybrid plan, in (0, 1).
   */
  double alpha;
  /**
   * Nonzero injects per-invocation search failures.
   */
  uint8_t noisy;
  /**
   * Failure probability of a single search invocation, in [0, 1].
   */
  double fail_prob;
  /**
   * Seed for the noisy search stream.
   */
  uint64_t seed;
  /**
   * Repetitions of the boosted inner search levels; 0 keeps the 2n schedule.
   */
  uint64_t boost_reps;
} SspOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Fill `options` with defaults (classical mode, alpha 0.055, exact search).
 *
 * # Safety
 * `options` must be null or point to writable `SspOptions` storage.
 */
SspStatus ssp_options_init(struct SspOptions *options);

/**
 * Solve the shortest-superstring instance given by `count` NUL-terminated
 * strings. On success stores a handle in `*out_solution`.
 *
 * # Safety
 * `strings` must point to `count` valid NUL-terminated strings and
 * `out_solution` to writable storage; `options` may be null for defaults.
 */
SspStatus ssp_solve(const char *const *strings,
                    size_t count,
                    const struct SspOptions *options,
                    struct SspSolution **out_solution);

/**
 * Free a solution handle. Null is a no-op.
 *
 * # Safety
 * `solution` must be null or a pointer previously returned by `ssp_solve`.
 */
void ssp_solution_free(struct SspSolution *solution);

/**
 * The superstring as a NUL-terminated string, owned by the handle.
 * Returns null for a null handle.
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
const char *ssp_solution_superstring(const struct SspSolution *solution);

/**
 * Superstring length in bytes; 0 for a null handle.
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
size_t ssp_solution_length(const struct SspSolution *solution);

/**
 * Total overlap weight of the returned path; -1 for a null handle.
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
int64_t ssp_solution_weight(const struct SspSolution *solution);

/**
 * Number of vertices on the path (surviving strings after filtering).
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
size_t ssp_solution_path_len(const struct SspSolution *solution);

/**
 * The `i`-th path vertex as a 0-based index into the caller's original
 * string order; -1 when out of range.
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
int32_t ssp_solution_path_vertex(const struct SspSolution *solution, size_t i);

/**
 * Number of original strings dropped by duplicate/containment filtering.
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
size_t ssp_solution_filtered_len(const struct SspSolution *solution);

/**
 * The `i`-th filtered original index; -1 when out of range.
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
int32_t ssp_solution_filtered_index(const struct SspSolution *solution, size_t i);

/**
 * Total charged quantum queries (saturating at u64).
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
uint64_t ssp_solution_quantum_queries(const struct SspSolution *solution);

/**
 * Charged queries of one level (`SspLevel` values); 0 for other arguments.
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
uint64_t ssp_solution_level_queries(const struct SspSolution *solution, int32_t level);

/**
 * DP-table entries materialized by the solve (0 for brute mode).
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
uint64_t ssp_solution_classical_entries(const struct SspSolution *solution);

/**
 * Nonzero when a hybrid solve resolved classically (instance below the
 * recursion's minimum size).
 *
 * # Safety
 * `solution` must be null or a live handle from `ssp_solve`.
 */
uint8_t ssp_solution_used_fallback(const struct SspSolution *solution);

/**
 * Human-readable name of a status code.
 */
const char *ssp_status_name(int32_t status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SSP_H */
