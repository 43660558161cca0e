/* C API for the splinetop spline-space library. */

#ifndef SPLINETOP_H
#define SPLINETOP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every FFI entry point.
 */
typedef enum SplinetopStatus {
  SPLINETOP_STATUS_OK = 0,
  SPLINETOP_STATUS_NULL_ARGUMENT = 1,
  SPLINETOP_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed or geometrically invalid input document.
   */
  SPLINETOP_STATUS_INVALID_DOCUMENT = 3,
  /**
   * A parameter was out of range for the requested computation.
   */
  SPLINETOP_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The modular-rank oracle disagreed with the exact computation.
   */
  SPLINETOP_STATUS_ORACLE_MISMATCH = 5,
} SplinetopStatus;

/**
 * Opaque handle to a loaded complex.
 */
typedef struct SplinetopComplex SplinetopComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread; do not free.
 */
const char *splinetop_last_error_message(void);

/**
 * Parse a JSON complex document into a handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum SplinetopStatus splinetop_complex_parse(const char *json, struct SplinetopComplex **out);

/**
 * Free a handle returned by [`splinetop_complex_parse`]. NULL is a no-op.
 *
 * # Safety
 * `handle` must come from [`splinetop_complex_parse`] and not be freed twice.
 */
void splinetop_complex_free(struct SplinetopComplex *handle);

/**
 * Free a string returned through an out pointer. NULL is a no-op.
 *
 * # Safety
 * `s` must come from a splinetop function and not be freed twice.
 */
void splinetop_string_free(char *s);

/**
 * Emit a built-in fixture ("q", "qprime", "delta_plus", "two_squares",
 * "t2", "t3", ...) as a JSON document.
 *
 * # Safety
 * `name` must be NUL-terminated; `out` must be valid.
 */
enum SplinetopStatus splinetop_fixture_json(const char *name, char **out);

/**
 * Basic counts: facets, interior codim-1 faces, interior vertices.
 *
 * # Safety
 * `handle` must be a live handle; out pointers must be valid or NULL
 * (NULL out pointers are skipped).
 */
enum SplinetopStatus splinetop_complex_counts(const struct SplinetopComplex *handle,
                                              size_t *out_facets,
                                              size_t *out_interior_codim1,
                                              size_t *out_interior_vertices);

/**
 * Validation report as JSON
 * (fields: pure, hereditary, manifold_ok, non_hereditary_witness).
 *
 * # Safety
 * `handle` must be live; `out` must be valid.
 */
enum SplinetopStatus splinetop_complex_validate_json(const struct SplinetopComplex *handle,
                                                     char **out);

/**
 * dim C^r_d. The dimension is cross-checked by the modular oracle at three
 * random primes drawn from `seed`; an oracle disagreement is an error.
 *
 * # Safety
 * `handle` must be live; `out_dim` must be valid.
 */
enum SplinetopStatus splinetop_dim(const struct SplinetopComplex *handle,
                                   uint32_t r,
                                   uint32_t d,
                                   bool homogeneous,
                                   uint64_t seed,
                                   size_t *out_dim);

/**
 * dim LS^{r,k}_d over the affine or homogenized lattice, oracle-checked.
 *
 * # Safety
 * `handle` must be live; `out_dim` must be valid.
 */
enum SplinetopStatus splinetop_ls_dim(const struct SplinetopComplex *handle,
                                      uint32_t r,
                                      size_t k,
                                      uint32_t d,
                                      bool homogeneous,
                                      bool homogenized_lattice,
                                      uint64_t seed,
                                      size_t *out_dim);

/**
 * The Gamma poset up to rank k as JSON (row sizes, node labels with ranks,
 * maximal labels, Hasse edges).
 *
 * # Safety
 * `handle` must be live; `out` must be valid.
 */
enum SplinetopStatus splinetop_gamma_json(const struct SplinetopComplex *handle,
                                          size_t k,
                                          bool homogenized_lattice,
                                          char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SPLINETOP_H */
