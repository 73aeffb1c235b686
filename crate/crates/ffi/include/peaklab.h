#ifndef PEAKLAB_H
#define PEAKLAB_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlCrossover {
  PL_CROSSOVER_ONE_POINT = 0,
  PL_CROSSOVER_TWO_POINT = 1,
  PL_CROSSOVER_UNIFORM = 2,
} PlCrossover;

typedef enum PlOutcome {
  PL_OUTCOME_OPTIMUM_FOUND = 0,
  PL_OUTCOME_BUDGET_EXHAUSTED = 1,
  PL_OUTCOME_WRONG_BASIN_CONVERGED = 2,
} PlOutcome;

typedef enum PlScheme {
  PL_SCHEME_EQUAL = 0,
  PL_SCHEME_LINEAR = 1,
} PlScheme;

typedef enum PlSelection {
  PL_SELECTION_BINARY_TOURNAMENT = 0,
  PL_SELECTION_FITNESS_PROPORTIONAL = 1,
} PlSelection;

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_INVALID_ARGUMENT = 2,
  PL_STATUS_LENGTH_MISMATCH = 3,
  PL_STATUS_PARSE_ERROR = 4,
  PL_STATUS_IO_ERROR = 5,
  PL_STATUS_GENERATION_FAILED = 6,
  PL_STATUS_NOT_AVAILABLE = 7,
  PL_STATUS_PANIC = 8,
} PlStatus;

typedef enum PlSuccessRule {
  PL_SUCCESS_RULE_GLOBAL_PEAK = 0,
  PL_SUCCESS_RULE_ANY_TOP_PEAK = 1,
} PlSuccessRule;

/**
 * Opaque finished GA run.
 */
typedef struct PlGaRun PlGaRun;

/**
 * Opaque problem instance.
 */
typedef struct PlInstance PlInstance;

typedef struct PlEvalResult {
  double fitness;
  size_t nearest_peak;
  size_t distance;
} PlEvalResult;

typedef struct PlGaConfig {
  size_t population_size;
  enum PlSelection selection;
  /**
   * Used only with fitness-proportional selection.
   */
  double scaling_factor;
  enum PlCrossover crossover;
  double crossover_rate;
  double mutation_rate;
  uint64_t max_evaluations;
  bool early_stop_on_wrong_basin;
  double convergence_fraction;
  enum PlSuccessRule success_rule;
  uint64_t seed;
} PlGaConfig;

typedef struct PlClimbConfig {
  uint64_t max_evaluations;
  enum PlSuccessRule success_rule;
  uint64_t seed;
} PlClimbConfig;

typedef struct PlClimbOutcome {
  bool success;
  uint64_t evaluations_used;
  uint64_t restarts;
  double best_fitness;
} PlClimbOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread; empty after a
 * successful call. Valid until the next call into this library.
 */
const char *pl_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pl_string_free(char *s);

/**
 * Generates an instance. `h_min` is ignored for the equal scheme.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum PlStatus pl_instance_generate(size_t peaks,
                                   size_t length,
                                   enum PlScheme scheme,
                                   double h_min,
                                   uint64_t seed,
                                   struct PlInstance **out);

/**
 * Parses the line-oriented instance format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PlStatus pl_instance_parse(const char *text, struct PlInstance **out);

/**
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum PlStatus pl_instance_serialize(const struct PlInstance *inst, char **out);

/**
 * # Safety
 * `inst` must be null or a handle from this library not yet freed.
 */
void pl_instance_free(struct PlInstance *inst);

/**
 * Number of peaks, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t pl_instance_peak_count(const struct PlInstance *inst);

/**
 * String length in bits, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t pl_instance_length(const struct PlInstance *inst);

/**
 * # Safety
 * `inst` must be null or a live handle.
 */
uint64_t pl_instance_seed(const struct PlInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum PlStatus pl_instance_height(const struct PlInstance *inst, size_t index, double *out);

/**
 * Copies peak `index` into `bits[0..len]`; `len` must equal the instance
 * length.
 *
 * # Safety
 * `inst` must be a live handle; `bits` must point to `len` writable bytes.
 */
enum PlStatus pl_instance_peak(const struct PlInstance *inst,
                               size_t index,
                               uint8_t *bits,
                               size_t len);

/**
 * # Safety
 * `a` and `b` must point to `len` readable bytes; `out` must be writable.
 */
enum PlStatus pl_hamming(const uint8_t *a, const uint8_t *b, size_t len, size_t *out);

/**
 * # Safety
 * `inst` must be a live handle, `bits` must point to `len` readable bytes
 * and `out` must be writable.
 */
enum PlStatus pl_evaluate(const struct PlInstance *inst,
                          const uint8_t *bits,
                          size_t len,
                          struct PlEvalResult *out);

/**
 * Fills `out` with the standard GA setup (two-point crossover at 0.7,
 * binary tournament, Pm = 1/L, 30 000 evaluations, no early stop).
 *
 * # Safety
 * `out` must be writable.
 */
enum PlStatus pl_ga_config_standard(size_t length,
                                    size_t population_size,
                                    uint64_t seed,
                                    struct PlGaConfig *out);

/**
 * # Safety
 * `inst` and `config` must be valid; `out` must be writable.
 */
enum PlStatus pl_ga_run(const struct PlInstance *inst,
                        const struct PlGaConfig *config,
                        struct PlGaRun **out);

/**
 * # Safety
 * `run` must be null or a handle from this library not yet freed.
 */
void pl_ga_run_free(struct PlGaRun *run);

/**
 * # Safety
 * `run` must be a live handle; `out` must be writable.
 */
enum PlStatus pl_ga_run_outcome(const struct PlGaRun *run, enum PlOutcome *out);

/**
 * Generations recorded in the trace (including generation 0), or 0 for a
 * null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
size_t pl_ga_run_generations(const struct PlGaRun *run);

/**
 * # Safety
 * `run` must be null or a live handle.
 */
uint64_t pl_ga_run_evaluations_used(const struct PlGaRun *run);

/**
 * `PL_STATUS_NOT_AVAILABLE` unless the run found the optimum.
 *
 * # Safety
 * `run` must be a live handle; `out` must be writable.
 */
enum PlStatus pl_ga_run_evaluations_to_success(const struct PlGaRun *run, uint64_t *out);

/**
 * `PL_STATUS_NOT_AVAILABLE` unless the last generation sits in one basin.
 *
 * # Safety
 * `run` must be a live handle; `out` must be writable.
 */
enum PlStatus pl_ga_run_converged_peak(const struct PlGaRun *run, size_t *out);

/**
 * Basin-count trace in the CSV schema written by the CLI.
 *
 * # Safety
 * `run` must be a live handle; `out` must be writable.
 */
enum PlStatus pl_ga_run_trace_csv(const struct PlGaRun *run, char **out);

/**
 * # Safety
 * `inst` and `config` must be valid; `out` must be writable.
 */
enum PlStatus pl_climb(const struct PlInstance *inst,
                       const struct PlClimbConfig *config,
                       struct PlClimbOutcome *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PEAKLAB_H */
