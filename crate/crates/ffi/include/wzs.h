#ifndef WZS_H
#define WZS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WzsInvariantKind {
  // Nonempty zero-sums.
  WZS_INVARIANT_KIND_DAVENPORT = 0,
  // Zero-sums of length `exp(G)`.
  WZS_INVARIANT_KIND_SMALL_S = 1,
  // Zero-sums of length `|G|`.
  WZS_INVARIANT_KIND_BIG_E = 2,
} WzsInvariantKind;

typedef enum WzsStatus {
  WZS_STATUS_OK = 0,
  WZS_STATUS_NULL_POINTER = 1,
  WZS_STATUS_INVALID_UTF8 = 2,
  WZS_STATUS_PARSE = 3,
  WZS_STATUS_INVALID_GROUP = 4,
  WZS_STATUS_INVALID_WEIGHTS = 5,
  WZS_STATUS_INVALID_SEQUENCE = 6,
  WZS_STATUS_BAD_PARAMETERS = 7,
  WZS_STATUS_INTERNAL = 8,
} WzsStatus;

typedef struct WzsGroup WzsGroup;

typedef struct WzsSequence WzsSequence;

typedef struct WzsWeights WzsWeights;

// Result of `wzs_invariant`.
typedef struct WzsInvariant {
  uint64_t value;
  // False when the node cap stopped the search; `value` is then a lower bound.
  bool exact;
  uint64_t nodes;
} WzsInvariant;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Length in bytes of the last error message on this thread, excluding the
// terminating NUL; 0 when there is none.
size_t wzs_last_error_length(void);

// Copies the last error message into `buf` (NUL-terminated). Returns the
// number of bytes written excluding the NUL, or -1 if `buf` is too small.
//
// # Safety
// `buf` must point to `len` writable bytes.
ptrdiff_t wzs_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *wzs_version(void);

// Parses `"4,8"`, `"Z4xZ8"` or `"8^2"`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum WzsStatus wzs_group_parse(const char *spec, struct WzsGroup **out);

// # Safety
// `g` must come from `wzs_group_parse` and not be used afterwards.
void wzs_group_free(struct WzsGroup *g);

// # Safety
// `g` must be a live handle.
uint64_t wzs_group_order(const struct WzsGroup *g);

// # Safety
// `g` must be a live handle.
uint64_t wzs_group_exponent(const struct WzsGroup *g);

// # Safety
// `g` must be a live handle.
size_t wzs_group_rank(const struct WzsGroup *g);

// Parses `"pm1"`, `"1..l"` or `"a,b,c"` against the exponent of `g`.
//
// # Safety
// `g` must be a live handle, `text` NUL-terminated, `out` writable.
enum WzsStatus wzs_weights_parse(const struct WzsGroup *g,
                                 const char *text,
                                 struct WzsWeights **out);

// # Safety
// `w` must come from `wzs_weights_parse` and not be used afterwards.
void wzs_weights_free(struct WzsWeights *w);

// Parses `"(0,0)^7 (1,0)"` or the JSON `[[coords, mult], ...]` form.
//
// # Safety
// `g` must be a live handle, `text` NUL-terminated, `out` writable.
enum WzsStatus wzs_sequence_parse(const struct WzsGroup *g,
                                  const char *text,
                                  struct WzsSequence **out);

// # Safety
// `s` must come from `wzs_sequence_parse` and not be used afterwards.
void wzs_sequence_free(struct WzsSequence *s);

// # Safety
// `s` must be a live handle.
size_t wzs_sequence_len(const struct WzsSequence *s);

// Whether `s` has a weighted zero-sum subsequence of exactly `length` terms.
//
// # Safety
// All handles must be live and built over the same group; `out` writable.
enum WzsStatus wzs_has_zero_sum_of_length(const struct WzsGroup *g,
                                          const struct WzsWeights *w,
                                          const struct WzsSequence *s,
                                          size_t length,
                                          bool *out);

// Whether `s` has a nonempty weighted zero-sum subsequence.
//
// # Safety
// All handles must be live and built over the same group; `out` writable.
enum WzsStatus wzs_has_nonempty_zero_sum(const struct WzsGroup *g,
                                         const struct WzsWeights *w,
                                         const struct WzsSequence *s,
                                         bool *out);

// Exhaustive computation of an invariant. `node_cap` 0 means unlimited.
//
// # Safety
// Handles must be live; `out` writable.
enum WzsStatus wzs_invariant(const struct WzsGroup *g,
                             const struct WzsWeights *w,
                             enum WzsInvariantKind kind,
                             uint64_t node_cap,
                             struct WzsInvariant *out);

// Like `wzs_invariant` but returns the full result as JSON in `*out`,
// to be released with `wzs_string_free`.
//
// # Safety
// Handles must be live; `out` writable.
enum WzsStatus wzs_invariant_json(const struct WzsGroup *g,
                                  const struct WzsWeights *w,
                                  enum WzsInvariantKind kind,
                                  uint64_t node_cap,
                                  char **out);

// # Safety
// `s` must come from this library and not be used afterwards.
void wzs_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* WZS_H */
