#ifndef LCRIT_H
#define LCRIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The numeric values match the command-line exit codes where
 * both exist.
 */
typedef enum LcritStatus {
  LCRIT_STATUS_OK = 0,
  LCRIT_STATUS_INTERNAL = 1,
  LCRIT_STATUS_PRECONDITION = 2,
  LCRIT_STATUS_NULL_POINTER = 4,
  LCRIT_STATUS_INVALID_STRING = 5,
  LCRIT_STATUS_PANIC = 6,
} LcritStatus;

typedef enum LcritLVerdict {
  LCRIT_L_VERDICT_ZERO = 0,
  LCRIT_L_VERDICT_NONZERO = 1,
  LCRIT_L_VERDICT_INDETERMINATE = 2,
} LcritLVerdict;

/**
 * Curve and eta-quotient data used by the L-value estimate.
 */
typedef struct LcritContext LcritContext;

/**
 * Forms enumerated for one `(N, Δ, x)`.
 */
typedef struct LcritFormSet LcritFormSet;

typedef struct LcritFValue {
  int64_t value;
  uint64_t count;
} LcritFValue;

typedef struct LcritVerdict {
  uint32_t level;
  int64_t d;
  int64_t f_x1;
  int64_t f_x2;
  uint64_t count_x1;
  uint64_t count_x2;
  /**
   * `L(E_D, 1) = 0`.
   */
  bool vanishes;
} LcritVerdict;

typedef struct LcritParity {
  uint64_t count;
  bool odd;
} LcritParity;

typedef struct LcritLValue {
  double value;
  double tail_bound;
  size_t terms_used;
  uint64_t conductor;
  enum LcritLVerdict verdict;
} LcritLValue;

typedef struct LcritForm {
  int64_t a;
  int64_t b;
  int64_t c;
} LcritForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *lcrit_last_error_message(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *lcrit_version(void);

/**
 * Context with the built-in curve data. Never null.
 */
struct LcritContext *lcrit_context_new(void);

/**
 * Context with curve data read from `level-NN.json` files in `dir`.
 *
 * # Safety
 * `dir` must be a nul-terminated string and `out` writable.
 */
enum LcritStatus lcrit_context_from_dir(const char *dir, struct LcritContext **out);

/**
 * # Safety
 * `ctx` must come from `lcrit_context_new`/`lcrit_context_from_dir` and not
 * have been freed. Null is ignored.
 */
void lcrit_context_free(struct LcritContext *ctx);

/**
 * Kronecker symbol `(a/n)`.
 */
int32_t lcrit_kronecker(int64_t a, int64_t n);

/**
 * `F_{0,N,D,D₀}(p/q)` and the number of forms summed.
 *
 * # Safety
 * `out` must be writable.
 */
enum LcritStatus lcrit_f_sum(uint64_t level,
                             int64_t d0,
                             int64_t d,
                             int64_t p,
                             int64_t q,
                             struct LcritFValue *out);

/**
 * Decide `L(E_D, 1) = 0` at a dimension-one level.
 *
 * # Safety
 * `out` must be writable.
 */
enum LcritStatus lcrit_vanishing_verdict(uint32_t level, int64_t d, struct LcritVerdict *out);

/**
 * Congruent-number test for `n ≡ 3 (mod 8)`; `vanishes` set means `n` is
 * congruent assuming BSD, unset means provably not congruent.
 *
 * # Safety
 * `out` must be writable.
 */
enum LcritStatus lcrit_congruent(int64_t n, struct LcritVerdict *out);

/**
 * Rational points on `x³ + n·y² = 432` for `n ≡ 1 (mod 3)`; `vanishes` set
 * means infinitely many assuming BSD, unset means finitely many.
 *
 * # Safety
 * `out` must be writable.
 */
enum LcritStatus lcrit_cubes(int64_t n, struct LcritVerdict *out);

/**
 * Parity of `#S_{32,3p}(1/3)` for a prime `p ≡ 3 (mod 8)`. An odd count
 * proves `p` is not congruent.
 *
 * # Safety
 * `out` must be writable.
 */
enum LcritStatus lcrit_parity(int64_t p, struct LcritParity *out);

/**
 * Truncated-series estimate of `L(E_D, 1)`. `terms = 0` picks the default
 * truncation.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum LcritStatus lcrit_l_value(const struct LcritContext *ctx,
                               uint32_t level,
                               int64_t d,
                               size_t terms,
                               struct LcritLValue *out);

/**
 * Forms `[a, b, c]` of discriminant `delta` with `a < 0`, `level | a` and
 * positive value at `p/q`, in lexicographic order.
 *
 * # Safety
 * `out` must be writable.
 */
enum LcritStatus lcrit_enumerate_forms(uint64_t level,
                                       int64_t delta,
                                       int64_t p,
                                       int64_t q,
                                       struct LcritFormSet **out);

/**
 * Number of forms in the set; 0 for null.
 *
 * # Safety
 * `set` must be null or a live form set.
 */
size_t lcrit_formset_len(const struct LcritFormSet *set);

/**
 * Copy form `index` into `out`.
 *
 * # Safety
 * `set` must be a live form set and `out` writable.
 */
enum LcritStatus lcrit_formset_get(const struct LcritFormSet *set,
                                   size_t index,
                                   struct LcritForm *out);

/**
 * # Safety
 * `set` must come from `lcrit_enumerate_forms` and not have been freed.
 * Null is ignored.
 */
void lcrit_formset_free(struct LcritFormSet *set);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCRIT_H */
