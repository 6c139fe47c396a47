#ifndef MONOGAMY_H
#define MONOGAMY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MonoStatus {
  MONO_STATUS_OK = 0,
  MONO_STATUS_NULL_POINTER = 1,
  MONO_STATUS_INVALID_UTF8 = 2,
  MONO_STATUS_INVALID_STATE = 3,
  MONO_STATUS_DIMENSION_MISMATCH = 4,
  MONO_STATUS_INVALID_CUT = 5,
  MONO_STATUS_INVALID_ARGUMENT = 6,
  MONO_STATUS_NUMERICAL = 7,
  MONO_STATUS_IO = 8,
  MONO_STATUS_FORMAT = 9,
  MONO_STATUS_PANIC = 10,
} MonoStatus;

typedef enum MonoBell {
  MONO_BELL_PSI_PLUS = 0,
  MONO_BELL_PSI_MINUS = 1,
  MONO_BELL_PHI_PLUS = 2,
  MONO_BELL_PHI_MINUS = 3,
} MonoBell;

typedef enum MonoEntropy {
  MONO_ENTROPY_LINEAR = 0,
  MONO_ENTROPY_VON_NEUMANN = 1,
  /**
   * Uses the `parameter` argument as the order α.
   */
  MONO_ENTROPY_RENYI = 2,
  /**
   * Uses the `parameter` argument as the index q.
   */
  MONO_ENTROPY_TSALLIS = 3,
} MonoEntropy;

/**
 * Opaque quantum state, pure or mixed.
 */
typedef struct MonoState MonoState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mono_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void mono_string_free(char *s);

/**
 * # Safety
 * `state` must be null or a handle returned by this library and not yet freed.
 */
void mono_state_free(struct MonoState *state);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum MonoStatus mono_state_ghz(size_t n, struct MonoState **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum MonoStatus mono_state_w(size_t n, struct MonoState **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum MonoStatus mono_state_bell(enum MonoBell kind, struct MonoState **out);

/**
 * Haar-random pure state on subsystems of dimensions `dims[0..len]`.
 *
 * # Safety
 * `dims` must point to `len` readable values; `out` must be valid for writes.
 */
enum MonoStatus mono_state_haar(const size_t *dims,
                                size_t len,
                                uint64_t seed,
                                struct MonoState **out);

/**
 * Ginibre-random mixed state of the given rank.
 *
 * # Safety
 * `dims` must point to `len` readable values; `out` must be valid for writes.
 */
enum MonoStatus mono_state_ginibre(const size_t *dims,
                                   size_t len,
                                   size_t rank,
                                   uint64_t seed,
                                   struct MonoState **out);

/**
 * Parse the JSON state format used by the command-line tool.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum MonoStatus mono_state_from_json(const char *json, struct MonoState **out);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes. The string
 * written to `out` is released with [`mono_string_free`].
 */
enum MonoStatus mono_state_to_json(const struct MonoState *state, char **out);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_state_parties(const struct MonoState *state, size_t *out);

/**
 * 1 for a pure handle, 0 for a mixed one.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_state_is_pure(const struct MonoState *state, int32_t *out);

/**
 * Partial trace onto the subsystems `keep[0..len]`, in that order.
 *
 * # Safety
 * `state` must be a live handle, `keep` must point to `len` readable values
 * and `out` must be valid for writes.
 */
enum MonoStatus mono_state_reduce(const struct MonoState *state,
                                  const size_t *keep,
                                  size_t len,
                                  struct MonoState **out);

/**
 * Tangle of a pure state across `side_a` versus the remaining subsystems.
 *
 * # Safety
 * `state` must be a live handle, `side_a` must point to `len` readable
 * values and `out` must be valid for writes.
 */
enum MonoStatus mono_pure_tangle(const struct MonoState *state,
                                 const size_t *side_a,
                                 size_t len,
                                 double *out);

/**
 * Closed-form tangle of a two-qubit state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_two_qubit_tangle(const struct MonoState *state, double *out);

/**
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_concurrence(const struct MonoState *state, double *out);

/**
 * Entanglement of formation of a two-qubit state, in bits.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_eof_two_qubit(const struct MonoState *state, double *out);

/**
 * Entropy of the whole state. `parameter` is read only for Rényi and Tsallis.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_entropy(const struct MonoState *state,
                             enum MonoEntropy kind,
                             double parameter,
                             double *out);

/**
 * Mean one-versus-rest tangle of a three-qubit pure state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_tau1(const struct MonoState *state, double *out);

/**
 * Mean pairwise tangle of a three-qubit pure state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_tau2(const struct MonoState *state, double *out);

/**
 * Tangle monogamy report for subsystem `focus`, as JSON. Roof terms use
 * the default optimizer settings with the given seed.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes. The string
 * written to `out` is released with [`mono_string_free`].
 */
enum MonoStatus mono_monogamy_report(const struct MonoState *state,
                                     size_t focus,
                                     uint64_t seed,
                                     char **out);

/**
 * Upper bound on the squashed entanglement of a bipartite state using
 * extensions of dimension up to `d_e`.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for writes.
 */
enum MonoStatus mono_squashed_bound(const struct MonoState *state,
                                    size_t d_e,
                                    uint64_t seed,
                                    double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOGAMY_H */
