#ifndef EVENFLOWS_H
#define EVENFLOWS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EvfStatus {
  EVF_STATUS_OK = 0,
  EVF_STATUS_DOMAIN = 1,
  EVF_STATUS_RANK_MISMATCH = 2,
  EVF_STATUS_PARSE = 3,
  EVF_STATUS_INVARIANT_BREACH = 4,
  EVF_STATUS_RESOURCE_CAP = 5,
  EVF_STATUS_NULL_POINTER = 6,
  EVF_STATUS_INVALID_UTF8 = 7,
  EVF_STATUS_PANIC = 8,
} EvfStatus;

// Opaque divisor tuple `(δ₀; δ₁,…,δ_{n−1})`.
typedef struct EvfDivisorTuple EvfDivisorTuple;

// Opaque dominant weight of `GL(n)`.
typedef struct EvfWeight EvfWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy of the last error message on this thread, or NULL if the last call succeeded.
char *evf_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void evf_string_free(char *s);

// Build a weight from `len` coordinates in the fundamental-weight basis.
//
// # Safety
// `coords` must point to `len` readable values; `out` must be writable.
enum EvfStatus evf_weight_new(const int64_t *coords, uintptr_t len, struct EvfWeight **out);

// # Safety
// `w` must be NULL or a handle from [`evf_weight_new`], not yet freed.
void evf_weight_free(struct EvfWeight *w);

// Rank `n`, or 0 for a NULL handle.
//
// # Safety
// `w` must be NULL or a live handle.
uintptr_t evf_weight_rank(const struct EvfWeight *w);

// # Safety
// `w` must be a live handle and `out` writable.
enum EvfStatus evf_weight_is_even_minuscule(const struct EvfWeight *w, bool *out);

// Brute-force check over the box `{0..bound}^{n−1}`; `bound <= 0` selects the default box.
//
// # Safety
// `w` must be a live handle and `out` writable.
enum EvfStatus evf_weight_is_even_minuscule_oracle(const struct EvfWeight *w,
                                                   int64_t bound,
                                                   bool *out);

// Whether `lambda − mu` lies in the even root cone.
//
// # Safety
// Both handles must be live and `out` writable.
enum EvfStatus evf_weight_even_leq(const struct EvfWeight *mu,
                                   const struct EvfWeight *lambda,
                                   bool *out);

// Parse `{"n": .., "delta0": {..}, "middle": [..]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum EvfStatus evf_divisor_tuple_from_json(const char *json, struct EvfDivisorTuple **out);

// # Safety
// `t` must be NULL or a handle from [`evf_divisor_tuple_from_json`], not yet freed.
void evf_divisor_tuple_free(struct EvfDivisorTuple *t);

// # Safety
// `t` must be a live handle; both out-pointers writable.
enum EvfStatus evf_divisor_tuple_classify(const struct EvfDivisorTuple *t,
                                          bool *very_stable,
                                          bool *even_very_stable);

// Full classification report, witnesses included, as JSON.
//
// # Safety
// `t` must be a live handle and `out` writable; free the result with [`evf_string_free`].
enum EvfStatus evf_divisor_tuple_classify_json(const struct EvfDivisorTuple *t, char **out);

// # Safety
// `out` must be writable.
enum EvfStatus evf_hitchin_multiplicity(uintptr_t n, uintptr_t k, uint64_t *out);

// # Safety
// `out` must be writable.
enum EvfStatus evf_even_hitchin_multiplicity(uintptr_t n, uintptr_t k, uint64_t *out);

// Poincaré polynomial, Euler characteristic and signature of a pair such as `"GL4/GL2xGL2"`.
//
// # Safety
// `pair` must be a NUL-terminated string and `out` writable; free the result with [`evf_string_free`].
enum EvfStatus evf_poincare_json(const char *pair,
                                 char **out);

// Diagram report for a case name; `n` and `k` equal to 0 mean "not given".
//
// # Safety
// `case_name` must be a NUL-terminated string and `out` writable; free the result with [`evf_string_free`].
enum EvfStatus evf_verify_diagram_json(const char *case_name,
                                       uintptr_t n,
                                       uintptr_t k,
                                       uint32_t oracle_degree,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EVENFLOWS_H */
