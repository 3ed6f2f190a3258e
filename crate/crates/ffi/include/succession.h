#ifndef SUCCESSION_H
#define SUCCESSION_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum SuccessionStatus {
  SUCCESSION_STATUS_OK = 0,
  SUCCESSION_STATUS_NULL_POINTER = 1,
  SUCCESSION_STATUS_INVALID_ARGUMENT = 2,
  SUCCESSION_STATUS_SYMBOL_OUT_OF_RANGE = 3,
  // The quantity is undefined for this history.
  SUCCESSION_STATUS_UNDEFINED = 4,
  // The law does not support the operation.
  SUCCESSION_STATUS_UNSUPPORTED = 5,
  // A symbol had probability zero.
  SUCCESSION_STATUS_NON_FINITE = 6,
  // A panic was caught at the boundary.
  SUCCESSION_STATUS_INTERNAL = 7,
} SuccessionStatus;

// Which estimation rule.
typedef enum SuccessionLawKind {
  SUCCESSION_LAW_KIND_LAPLACE = 0,
  // `param` is λ > 0; λ = 0.5 is Jeffreys-Perks.
  SUCCESSION_LAW_KIND_LIDSTONE = 1,
  SUCCESSION_LAW_KIND_UNIFORM_SUBSETS = 2,
  SUCCESSION_LAW_KIND_NATURAL = 3,
  SUCCESSION_LAW_KIND_SHARPENED_SUBSETS = 4,
  SUCCESSION_LAW_KIND_SHARPENED_NATURAL = 5,
  SUCCESSION_LAW_KIND_METHOD_A = 6,
  SUCCESSION_LAW_KIND_METHOD_B = 7,
  SUCCESSION_LAW_KIND_METHOD_C = 8,
  SUCCESSION_LAW_KIND_METHOD_D = 9,
  SUCCESSION_LAW_KIND_GOOD_TURING = 10,
  // `param` is δ in (0, 1).
  SUCCESSION_LAW_KIND_ABSOLUTE_DISCOUNT = 11,
  // `param` is α in (0, 1).
  SUCCESSION_LAW_KIND_LINEAR_DISCOUNT = 12,
} SuccessionLawKind;

// Opaque frequency vector.
typedef struct SuccessionFrequencyVector SuccessionFrequencyVector;

// Summary statistics of a frequency vector.
typedef struct SuccessionStats {
  uint64_t k;
  uint64_t n;
  // Attested symbols.
  uint64_t q;
  // Symbols seen at least twice.
  uint64_t q_prime;
  // Empirical entropy of the counts times n, in bits.
  double entropy_bits;
} SuccessionStats;

// A law and its parameter; `param` is ignored by laws without one.
typedef struct SuccessionLawSpec {
  enum SuccessionLawKind kind;
  double param;
} SuccessionLawSpec;

// Codelength totals for one stream.
typedef struct SuccessionReport {
  double bits;
  uint64_t bytes_ceil;
  double entropy_bits;
  uint64_t entropy_bytes_ceil;
  int64_t score_bytes;
  uint64_t q;
  uint64_t n;
} SuccessionReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *succession_last_error_message(void);

// Static description of a status code.
const char *succession_status_string(enum SuccessionStatus status);

// Empty frequency vector over `k` symbols.
enum SuccessionStatus succession_fv_new(size_t k, struct SuccessionFrequencyVector **out);

// Frequency vector from `len` counts; missing trailing counts are zero.
// Negative counts are rejected.
//
// # Safety
// `counts` must point to `len` readable values, or be null with `len = 0`.
enum SuccessionStatus succession_fv_from_counts(size_t k,
                                                const int64_t *counts,
                                                size_t len,
                                                struct SuccessionFrequencyVector **out);

// Releases a handle; null is ignored.
//
// # Safety
// `fv` must be null or a handle from this library not yet freed.
void succession_fv_free(struct SuccessionFrequencyVector *fv);

// Records one more occurrence of `symbol`.
//
// # Safety
// `fv` must be null or a live handle.
enum SuccessionStatus succession_fv_observe(struct SuccessionFrequencyVector *fv, size_t symbol);

// # Safety
// `fv` must be null or a live handle; `out` must be writable.
enum SuccessionStatus succession_fv_stats(const struct SuccessionFrequencyVector *fv,
                                          struct SuccessionStats *out);

// Count of `symbol`.
//
// # Safety
// `fv` must be null or a live handle; `out` must be writable.
enum SuccessionStatus succession_fv_count(const struct SuccessionFrequencyVector *fv,
                                          size_t symbol,
                                          uint64_t *out);

// Probability that the next symbol is `symbol`.
//
// # Safety
// `fv` must be null or a live handle; `out` must be writable.
enum SuccessionStatus succession_conditional(const struct SuccessionFrequencyVector *fv,
                                             struct SuccessionLawSpec law,
                                             size_t symbol,
                                             double *out);

// Total probability of the novel symbols.
//
// # Safety
// `fv` must be null or a live handle; `out` must be writable.
enum SuccessionStatus succession_escape_mass(const struct SuccessionFrequencyVector *fv,
                                             struct SuccessionLawSpec law,
                                             double *out);

// `log2` of the probability the law's prior gives one string with these
// counts.
//
// # Safety
// `fv` must be null or a live handle; `out` must be writable.
enum SuccessionStatus succession_string_log2prob(const struct SuccessionFrequencyVector *fv,
                                                 struct SuccessionLawSpec law,
                                                 double *out);

// `log2 p_a - log2 p_b` for one string with these counts.
//
// # Safety
// `fv` must be null or a live handle; `out` must be writable.
enum SuccessionStatus succession_log_ratio(const struct SuccessionFrequencyVector *fv,
                                           struct SuccessionLawSpec a,
                                           struct SuccessionLawSpec b,
                                           double *out);

// Sequential codelength of `len` symbols, each below `k`.
//
// # Safety
// `symbols` must point to `len` readable values, or be null with `len = 0`;
// `out` must be writable.
enum SuccessionStatus succession_evaluate(const uint32_t *symbols,
                                          size_t len,
                                          size_t k,
                                          struct SuccessionLawSpec law,
                                          struct SuccessionReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUCCESSION_H */
