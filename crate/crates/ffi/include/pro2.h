/* This file is generated from the pro2-ffi crate with cbindgen; edit there. */

#ifndef PRO2_H
#define PRO2_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Generator names for `pro2_element_generator`.
 */
typedef enum Pro2Gen {
  PRO2_GEN_X = 0,
  PRO2_GEN_Y = 1,
  /**
   * `y_i = y^(x^i)`; pass `i` as the index argument.
   */
  PRO2_GEN_YI = 2,
  /**
   * `c_d = [y_0, y_d]`; pass `d` as the index argument.
   */
  PRO2_GEN_CD = 3,
  PRO2_GEN_Y_SQUARED = 4,
  PRO2_GEN_W = 5,
} Pro2Gen;

/**
 * Named subgroup selector; `m` and `n` are only read for `K` and `L`.
 */
typedef enum Pro2NamedSubgroup {
  PRO2_NAMED_SUBGROUP_Z = 0,
  PRO2_NAMED_SUBGROUP_ZK = 1,
  PRO2_NAMED_SUBGROUP_H = 2,
  PRO2_NAMED_SUBGROUP_K = 3,
  PRO2_NAMED_SUBGROUP_L = 4,
  PRO2_NAMED_SUBGROUP_FULL_GROUP = 5,
  PRO2_NAMED_SUBGROUP_TRIVIAL = 6,
} Pro2NamedSubgroup;

/**
 * Filtration series selector.
 */
typedef enum Pro2SeriesKind {
  PRO2_SERIES_KIND_LOWER_CENTRAL = 0,
  PRO2_SERIES_KIND_LOWER2 = 1,
  PRO2_SERIES_KIND_DIMENSION = 2,
  PRO2_SERIES_KIND_FRATTINI = 3,
  PRO2_SERIES_KIND_TWO_POWER = 4,
  PRO2_SERIES_KIND_ITERATED = 5,
  PRO2_SERIES_KIND_R_SERIES = 6,
  PRO2_SERIES_KIND_N_SERIES = 7,
} Pro2SeriesKind;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum Pro2Status {
  PRO2_STATUS_OK = 0,
  PRO2_STATUS_NULL_POINTER = 1,
  PRO2_STATUS_INVALID_ARGUMENT = 2,
  PRO2_STATUS_CONTEXT_MISMATCH = 3,
  PRO2_STATUS_NOT_NORMAL = 4,
  PRO2_STATUS_CAPACITY = 5,
  PRO2_STATUS_UNDEFINED_RATIO = 6,
  PRO2_STATUS_CHECK_FAILED = 7,
  PRO2_STATUS_PANIC = 8,
} Pro2Status;

typedef struct Pro2Context Pro2Context;

typedef struct Pro2Element Pro2Element;

typedef struct Pro2Series Pro2Series;

typedef struct Pro2Subgroup Pro2Subgroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create the context for `G_k` (`2 <= k <= 6`).
 */
Pro2Status pro2_context_new(uint32_t k, Pro2Context **out);

void pro2_context_free(Pro2Context *ctx);

/**
 * `log_2 |G_k| = 2^k + 2^(k-1) + k + 2`.
 */
Pro2Status pro2_context_log_order(const Pro2Context *ctx, uint32_t *out);

Pro2Status pro2_element_identity(const Pro2Context *ctx, Pro2Element **out);

/**
 * The named generator; `index` is read for `Yi` and `Cd` only.
 */
Pro2Status pro2_element_generator(const Pro2Context *ctx,
                                  Pro2Gen gen,
                                  uint32_t index,
                                  Pro2Element **out);

void pro2_element_free(Pro2Element *e);

Pro2Status pro2_element_mul(const Pro2Element *a, const Pro2Element *b, Pro2Element **out);

Pro2Status pro2_element_inv(const Pro2Element *a, Pro2Element **out);

Pro2Status pro2_element_pow(const Pro2Element *a, int64_t n, Pro2Element **out);

/**
 * Left-normed commutator `[a, b] = a^-1 b^-1 a b`.
 */
Pro2Status pro2_element_comm(const Pro2Element *a, const Pro2Element *b, Pro2Element **out);

/**
 * Order of the element, a power of 2.
 */
Pro2Status pro2_element_order(const Pro2Element *a, uint64_t *out);

Pro2Status pro2_element_is_identity(const Pro2Element *a, bool *out);

Pro2Status pro2_element_eq(const Pro2Element *a, const Pro2Element *b, bool *out);

/**
 * Polycyclic coordinate vector as two 64-bit words (low word first).
 */
Pro2Status pro2_element_coords(const Pro2Element *a, uint64_t *out_lo, uint64_t *out_hi);

/**
 * Echelonized closure of `len` generators; the normal closure when
 * `normal` is set.
 */
Pro2Status pro2_subgroup_closure(const Pro2Context *ctx,
                                 const Pro2Element *const *gens,
                                 uintptr_t len,
                                 bool normal,
                                 Pro2Subgroup **out);

void pro2_subgroup_free(Pro2Subgroup *s);

Pro2Status pro2_subgroup_log_order(const Pro2Subgroup *s, uint32_t *out);

Pro2Status pro2_subgroup_contains(const Pro2Subgroup *s, const Pro2Element *e, bool *out);

/**
 * Residue of `e` after sifting through the subgroup basis.
 */
Pro2Status pro2_subgroup_sift(const Pro2Subgroup *s, const Pro2Element *e, Pro2Element **out);

/**
 * Compute a filtration series; `cap_log2` bounds exhaustive enumeration.
 */
Pro2Status pro2_series_compute(const Pro2Context *ctx,
                               Pro2SeriesKind kind,
                               uint32_t cap_log2,
                               Pro2Series **out);

void pro2_series_free(Pro2Series *s);

/**
 * Subscript of the first stored term.
 */
Pro2Status pro2_series_start_index(const Pro2Series *s, uint32_t *out);

/**
 * Number of factor steps (one less than the number of stored terms).
 */
Pro2Status pro2_series_num_factors(const Pro2Series *s, uintptr_t *out);

Pro2Status pro2_series_factor_rank(const Pro2Series *s, uintptr_t idx, uint32_t *out);

Pro2Status pro2_series_term_log_order(const Pro2Series *s, uintptr_t idx, uint32_t *out);

/**
 * Whether the term agrees with its structural closed form.
 */
Pro2Status pro2_series_closed_form_match(const Pro2Series *s, uintptr_t idx, bool *out);

/**
 * Exact ratio `log|K S_i : S_i| / log|G : S_i|` for a named subgroup `K`
 * against the series term with subscript `level`; writes the reduced
 * fraction.
 */
Pro2Status pro2_hdim_ratio(const Pro2Context *ctx,
                           Pro2SeriesKind kind,
                           Pro2NamedSubgroup subgroup,
                           uint32_t m,
                           uint32_t n,
                           uint32_t level,
                           uint32_t cap_log2,
                           uint64_t *out_num,
                           uint64_t *out_den);

/**
 * Run the structural check suite for `G_k`; writes the number of failing
 * checks and returns `CheckFailed` if any fail (skips do not fail).
 */
Pro2Status pro2_verify(uint32_t k, uint32_t cap_log2, uint32_t samples, uint32_t *out_failed);

#ifdef __cplusplus
}  // extern "C"
#endif // __cplusplus

#endif  /* PRO2_H */
