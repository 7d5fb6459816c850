/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef SHORTCODE_H
#define SHORTCODE_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes of every fallible call.
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  SC_STATUS_INVALID_UTF8 = 2,
  SC_STATUS_PARSE = 3,
  SC_STATUS_INVALID_FIELD = 4,
  SC_STATUS_ARITHMETIC = 5,
  SC_STATUS_GATE_UNSATISFIED = 6,
  SC_STATUS_CAP_EXCEEDED = 7,
  SC_STATUS_BUDGET_EXCEEDED = 8,
  SC_STATUS_INVALID_ARGUMENT = 9,
  SC_STATUS_OVERFLOW = 10,
  SC_STATUS_PANIC = 11,
} ScStatus;

// A linear code over GF(p).
typedef struct ScCode ScCode;

// A finite field GF(p^m).
typedef struct ScField ScField;

// A weight distribution with its code parameters.
typedef struct ScWeights ScWeights;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty if none. Valid
// until the next failing call on the same thread.
const char *sc_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void sc_string_free(char *s);

// Builds GF(p^m) from a spec such as `p=2,m=5` or `p=2,m=5,mod=100101`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` a valid pointer.
enum ScStatus sc_field_new(const char *spec, struct ScField **out);

// # Safety
// `f` must come from `sc_field_new` and not be freed twice.
void sc_field_free(struct ScField *f);

// Field order q, or 0 for a null handle.
//
// # Safety
// `f` must be null or a live handle.
uint32_t sc_field_order(const struct ScField *f);

// Element operations on indices `sum c_i p^i`. `op` is 0 for addition,
// 1 for multiplication, 2 for division `a / b`.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum ScStatus sc_field_op(const struct ScField *f,
                          uint32_t op,
                          uint32_t a,
                          uint32_t b,
                          uint32_t *out);

// Absolute trace of element `a`, in `0..p`.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum ScStatus sc_field_trace(const struct ScField *f, uint32_t a, uint32_t *out);

// Builds the code of a monomial from a spec such as `apn:p=2,m=5,e=1` or
// `pn:p=3,m=3,s=2`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` a valid pointer.
enum ScStatus sc_code_build(const char *spec, struct ScCode **out);

// Reads a code from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` a valid pointer.
enum ScStatus sc_code_from_json(const char *json, struct ScCode **out);

// Writes the JSON form of a code; release with `sc_string_free`.
//
// # Safety
// `c` must be a live handle and `out` a valid pointer.
enum ScStatus sc_code_to_json(const struct ScCode *c, char **out);

// # Safety
// `c` must come from this library and not be freed twice.
void sc_code_free(struct ScCode *c);

// Length n, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
size_t sc_code_length(const struct ScCode *c);

// Dimension k, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
size_t sc_code_dimension(const struct ScCode *c);

// Shortens on the coordinates named by `t` (`GF(p)`, `GF(4)`, or a list
// such as `0,1,alpha^3`).
//
// # Safety
// `c` must be a live handle, `t` a NUL-terminated string, `out` valid.
enum ScStatus sc_code_shorten(const struct ScCode *c, const char *t, struct ScCode **out);

// Punctures on the coordinates named by `t`.
//
// # Safety
// `c` must be a live handle, `t` a NUL-terminated string, `out` valid.
enum ScStatus sc_code_puncture(const struct ScCode *c, const char *t, struct ScCode **out);

// Dual code.
//
// # Safety
// `c` must be a live handle and `out` valid.
enum ScStatus sc_code_dual(const struct ScCode *c, struct ScCode **out);

// Number of weight-`w` supports containing the coordinates named by `t`,
// in the code (`in_dual` false) or its dual.
//
// # Safety
// `c` must be a live handle, `t` a NUL-terminated string, `out` valid.
enum ScStatus sc_code_lambda(const struct ScCode *c,
                             const char *t,
                             size_t w,
                             bool in_dual,
                             uint64_t *out);

// Enumerates the code's weight distribution (cap from `SHORTCODE_CAP`).
//
// # Safety
// `c` must be a live handle and `out` valid.
enum ScStatus sc_code_weights(const struct ScCode *c, struct ScWeights **out);

// Closed-form distribution of a table (`tab1` .. `tab16`, `gf4`).
// `lambda` is used only when `has_lambda` is true.
//
// # Safety
// `table` must be a NUL-terminated string; `out` valid.
enum ScStatus sc_predict(const char *table,
                         uint32_t p,
                         uint32_t m,
                         int64_t lambda,
                         bool has_lambda,
                         struct ScWeights **out);

// # Safety
// `w` must come from this library and not be freed twice.
void sc_weights_free(struct ScWeights *w);

// Code length n of the distribution, or 0 for a null handle.
//
// # Safety
// `w` must be null or a live handle.
size_t sc_weights_length(const struct ScWeights *w);

// Number of codewords of weight `weight`; `Overflow` if it exceeds 64 bits.
//
// # Safety
// `w` must be a live handle and `out` valid.
enum ScStatus sc_weights_count(const struct ScWeights *w, size_t weight, uint64_t *out);

// True when both distributions have the same length and counts.
//
// # Safety
// Both must be null or live handles.
bool sc_weights_equal(const struct ScWeights *a, const struct ScWeights *b);

// JSON form with decimal-string counts; release with `sc_string_free`.
//
// # Safety
// `w` must be a live handle and `out` valid.
enum ScStatus sc_weights_to_json(const struct ScWeights *w, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHORTCODE_H */
