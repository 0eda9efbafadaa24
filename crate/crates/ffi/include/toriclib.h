#ifndef TORICLIB_H
#define TORICLIB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TlStatus {
  TL_STATUS_OK = 0,
  /**
   * Two computations that must agree did not.
   */
  TL_STATUS_MISMATCH = 1,
  /**
   * Malformed input text or figure data.
   */
  TL_STATUS_PARSE = 2,
  /**
   * A size guard or brute-force budget stopped the call.
   */
  TL_STATUS_GUARD = 3,
  /**
   * An argument was out of range.
   */
  TL_STATUS_INVALID_ARGUMENT = 4,
  /**
   * A required pointer was null.
   */
  TL_STATUS_NULL_POINTER = 5,
  /**
   * A panic or broken internal invariant.
   */
  TL_STATUS_INTERNAL = 6,
} TlStatus;

/**
 * A parsed figure-set file.
 */
typedef struct TlFigureSet TlFigureSet;

/**
 * A polynomial with rational coefficients.
 */
typedef struct TlPoly TlPoly;

/**
 * A sequence of polynomials `q_0 .. q_K`.
 */
typedef struct TlTable TlTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL if none. The
 * caller owns the returned string.
 */
char *tl_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void tl_string_free(char *s);

/**
 * Parses a figure-set JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TlStatus tl_figure_set_from_json(const char *json, struct TlFigureSet **out);

/**
 * Number of distinct figures in the set, or 0 for NULL.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
size_t tl_figure_set_len(const struct TlFigureSet *set);

/**
 * Dimension of the figures in the set, or 0 for NULL.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
size_t tl_figure_set_dim(const struct TlFigureSet *set);

/**
 * # Safety
 * `set` must be NULL or a handle not yet freed.
 */
void tl_figure_set_free(struct TlFigureSet *set);

/**
 * Placement polynomial of the set on the torus, in `N = n^d`. `n0`, if not
 * NULL, receives the side length from which it is exact.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable; `n0` NULL or writable.
 */
enum TlStatus tl_poly_torus(const struct TlFigureSet *set,
                            bool allow_large,
                            struct TlPoly **out,
                            uint64_t *n0);

/**
 * Placement polynomial of the set in the box `[0,n)^d`, in the side `n`.
 *
 * # Safety
 * As for `tl_poly_torus`.
 */
enum TlStatus tl_poly_box(const struct TlFigureSet *set,
                          bool allow_large,
                          struct TlPoly **out,
                          uint64_t *n0);

/**
 * Degree of the polynomial, or -1 for the zero polynomial and NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
int64_t tl_poly_degree(const struct TlPoly *p);

/**
 * Coefficient of `var^i` as an exact rational string. Owned by the caller.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
char *tl_poly_coeff(const struct TlPoly *p, size_t i);

/**
 * Human-readable form such as `2N^2 - 7N`, using `var` as the variable
 * name (`"N"` when NULL). Owned by the caller.
 *
 * # Safety
 * `p` must be NULL or a live handle; `var` NULL or NUL-terminated.
 */
char *tl_poly_to_string(const struct TlPoly *p, const char *var);

/**
 * Value at the integer `x` as an exact rational string. Owned by the caller.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
char *tl_poly_eval(const struct TlPoly *p, int64_t x);

/**
 * # Safety
 * `p` must be NULL or a handle not yet freed.
 */
void tl_poly_free(struct TlPoly *p);

/**
 * The sequence `q_0 .. q_K` of the catalog given by `set` (each figure
 * listed once, with its weight). Both routes are computed; disagreement
 * returns `TL_STATUS_MISMATCH`.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum TlStatus tl_sequence_table(const struct TlFigureSet *set,
                                size_t max_weight,
                                bool allow_large,
                                struct TlTable **out);

/**
 * Unsigned chromatic coefficient polynomials of `T^d_n` through `x^(N-K)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TlStatus tl_chromatic_table(size_t dim,
                                 size_t max_weight,
                                 bool allow_large,
                                 struct TlTable **out);

/**
 * Number of polynomials in the table (`K + 1`), or 0 for NULL.
 *
 * # Safety
 * `t` must be NULL or a live handle.
 */
size_t tl_table_len(const struct TlTable *t);

/**
 * A new handle holding a copy of `q_k`, or NULL if out of range.
 *
 * # Safety
 * `t` must be NULL or a live handle.
 */
struct TlPoly *tl_table_get(const struct TlTable *t, size_t k);

/**
 * Checks the binomial-type identities for the whole table. `passed`
 * receives the verdict.
 *
 * # Safety
 * `t` must be a live handle; `passed` must be writable.
 */
enum TlStatus tl_table_verify_binomial(const struct TlTable *t, bool *passed);

/**
 * # Safety
 * `t` must be NULL or a handle not yet freed.
 */
void tl_table_free(struct TlTable *t);

/**
 * Number of `k`-edge subsets of `T^d_n` with no broken circuit.
 *
 * # Safety
 * `out` must be writable.
 */
enum TlStatus tl_bc_free_count(size_t dim, uint64_t n, size_t k, bool allow_large, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORICLIB_H */
