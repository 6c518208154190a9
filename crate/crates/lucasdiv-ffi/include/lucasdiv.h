#ifndef LUCASDIV_H
#define LUCASDIV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every FFI entry point.
 */
typedef enum LucasdivStatus {
  /**
   * Call succeeded; out-parameters are valid.
   */
  LucasdivStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  LucasdivStatus_NullPointer = 1,
  /**
   * The parameter pair is outside the accepted family (b not in {-1, 1},
   * zero discriminant, or a degenerate pair).
   */
  LucasdivStatus_InvalidParams = 2,
  /**
   * An argument failed a precondition (range, coprimality, ...).
   */
  LucasdivStatus_RejectedInput = 3,
  /**
   * A bounded search exhausted its cap without an answer.
   */
  LucasdivStatus_CapExceeded = 4,
  /**
   * Floating point precision too low to certify; retry with more bits.
   */
  LucasdivStatus_PrecisionInsufficient = 5,
  /**
   * Unexpected internal failure.
   */
  LucasdivStatus_InternalError = 6,
} LucasdivStatus;

/**
 * Opaque handle for a validated Lucas parameter pair.
 */
typedef struct LucasdivParams LucasdivParams;

/**
 * Result of a minimal-exponent search.
 */
typedef struct LucasdivMinS {
  /**
   * 1 if a minimal exponent was found, 0 if none can ever exist
   * (certified obstruction).
   */
  uint8_t found;
  /**
   * The minimal exponent when `found` is 1.
   */
  uint64_t s;
  /**
   * The witnessing shift when `found` is 1.
   */
  uint64_t n;
} LucasdivMinS;

/**
 * Result of a multiplicative-dependence search.
 */
typedef struct LucasdivWitness {
  /**
   * 1 if a dependence was certified within the search bound.
   */
  uint8_t found;
  /**
   * Exponent of the fundamental root in the certified relation.
   */
  int64_t r;
  /**
   * Exponent of the twisted ratio in the certified relation.
   */
  int64_t s;
  /**
   * Order of the root of unity the monomial lands on.
   */
  uint64_t torsion;
} LucasdivWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a parameter handle for the pair `(a, b)`.
 *
 * Writes the handle to `out` on success. Rejects `b` outside `{-1, 1}`,
 * zero discriminant, and degenerate pairs.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LucasdivStatus lucasdiv_params_new(int64_t a, int64_t b, struct LucasdivParams **out);

/**
 * Releases a handle returned by [`lucasdiv_params_new`]. Null is a no-op.
 *
 * # Safety
 * `params` must be null or a pointer from `lucasdiv_params_new` not yet
 * freed.
 */
void lucasdiv_params_free(struct LucasdivParams *params);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string pointer produced by this library not yet
 * freed.
 */
void lucasdiv_string_free(char *s);

/**
 * Writes `U_n` as a decimal string to `out`.
 *
 * # Safety
 * `params` must be a live handle; `out` must be a valid pointer.
 */
enum LucasdivStatus lucasdiv_u(const struct LucasdivParams *params, uint64_t n, char **out);

/**
 * Writes the companion value `V_n` as a decimal string to `out`.
 *
 * # Safety
 * `params` must be a live handle; `out` must be a valid pointer.
 */
enum LucasdivStatus lucasdiv_v(const struct LucasdivParams *params, uint64_t n, char **out);

/**
 * Writes `U_n mod modulus` (least nonnegative residue) to `out`.
 * Requires `modulus >= 2`.
 *
 * # Safety
 * `params` must be a live handle; `out` must be a valid pointer.
 */
enum LucasdivStatus lucasdiv_u_mod(const struct LucasdivParams *params,
                                   uint64_t n,
                                   uint64_t modulus,
                                   uint64_t *out);

/**
 * Rank of appearance of the prime `p`: least `t >= 1` with `p | U_t`.
 *
 * # Safety
 * `params` must be a live handle; `out` must be a valid pointer.
 */
enum LucasdivStatus lucasdiv_rank_of_appearance(const struct LucasdivParams *params,
                                                uint64_t p,
                                                uint64_t *out);

/**
 * Minimal `s` with `U_m | U_{n+k}^s - U_n^s` for some `n in [1, 4m]`,
 * searching `s <= s_cap` (pass 0 for the default cap `4m`).
 *
 * On `Ok`, `out->found == 1` carries the exponent and witness shift;
 * `out->found == 0` means no exponent exists for any `n` and `s`
 * (certified obstruction). Returns `CapExceeded` if the cap is exhausted
 * without either outcome.
 *
 * # Safety
 * `params` must be a live handle; `out` must be a valid pointer.
 */
enum LucasdivStatus lucasdiv_min_s(const struct LucasdivParams *params,
                                   uint64_t k,
                                   uint64_t m,
                                   uint64_t s_cap,
                                   struct LucasdivMinS *out);

/**
 * Searches for a multiplicative dependence between the fundamental root
 * and the twisted ratio attached to `(k, v, j)`.
 *
 * Scans exponent pairs up to `bound` (in `[1, 64]`) using
 * `precision_bits` of floating point precision for the screen; every
 * candidate is certified exactly. On `Ok`, `out->found` tells whether a
 * relation was certified within the bound.
 *
 * # Safety
 * `params` must be a live handle; `out` must be a valid pointer.
 */
enum LucasdivStatus lucasdiv_find_dependence(const struct LucasdivParams *params,
                                             uint64_t k,
                                             uint64_t v,
                                             uint64_t j,
                                             uint64_t bound,
                                             uint32_t precision_bits,
                                             struct LucasdivWitness *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LUCASDIV_H */
