#ifndef FID_H
#define FID_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum FidStatus {
  FID_STATUS_OK = 0,
  FID_STATUS_NULL_POINTER = 1,
  FID_STATUS_INVALID_UTF8 = 2,
  FID_STATUS_PARSE = 3,
  FID_STATUS_PRECONDITION = 4,
  FID_STATUS_CAP_EXCEEDED = 5,
  FID_STATUS_VOCABULARY_MISMATCH = 6,
  FID_STATUS_INTERNAL = 7,
} FidStatus;

/**
 * An opaque first-order sentence.
 */
typedef struct FidFormula FidFormula;

/**
 * An opaque finite structure.
 */
typedef struct FidStructure FidStructure;

/**
 * Numeric invariants of a structure.
 */
typedef struct FidInvariants {
  size_t order;
  size_t max_arity;
  size_t sigma;
  /**
   * Exact when `delta_exact` is set, otherwise a lower bound.
   */
  size_t delta;
  bool delta_exact;
  size_t rho;
  size_t fineness;
} FidInvariants;

/**
 * Summary of a synthesized sentence.
 */
typedef struct FidSynthesisInfo {
  size_t quantifiers;
  size_t existential;
  size_t universal;
  size_t claimed_bound;
} FidSynthesisInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *fid_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void fid_string_free(char *s);

/**
 * Parses a structure in the `.fos` text format.
 *
 * # Safety
 * `src` must be a valid C string and `out` a valid pointer.
 */
enum FidStatus fid_structure_parse(const char *src, struct FidStructure **out);

/**
 * Releases a structure. Null is ignored.
 *
 * # Safety
 * `m` must come from [`fid_structure_parse`] and not have been freed.
 */
void fid_structure_free(struct FidStructure *m);

/**
 * Number of elements, or 0 for null.
 *
 * # Safety
 * `m` must be null or a live structure handle.
 */
size_t fid_structure_order(const struct FidStructure *m);

/**
 * Serializes a structure to the `.fos` text format.
 *
 * # Safety
 * `m` must be a live structure handle and `out` a valid pointer.
 */
enum FidStatus fid_structure_to_text(const struct FidStructure *m, char **out);

/**
 * Whether two structures are isomorphic.
 *
 * # Safety
 * `a` and `b` must be live structure handles and `out` a valid pointer.
 */
enum FidStatus fid_are_isomorphic(const struct FidStructure *a,
                                  const struct FidStructure *b,
                                  bool *out);

/**
 * Computes σ, δ, ρ and the fineness of the ρ witness base.
 *
 * # Safety
 * `m` must be a live structure handle and `out` a valid pointer.
 */
enum FidStatus fid_invariants(const struct FidStructure *m, struct FidInvariants *out);

/**
 * Parses a sentence in the formula text grammar.
 *
 * # Safety
 * `src` must be a valid C string and `out` a valid pointer.
 */
enum FidStatus fid_formula_parse(const char *src, struct FidFormula **out);

/**
 * Releases a formula. Null is ignored.
 *
 * # Safety
 * `f` must come from this library and not have been freed.
 */
void fid_formula_free(struct FidFormula *f);

/**
 * Prints a formula in the text grammar.
 *
 * # Safety
 * `f` must be a live formula handle and `out` a valid pointer.
 */
enum FidStatus fid_formula_to_text(const struct FidFormula *f, char **out);

/**
 * Synthesizes an identifying sentence. `method` is one of `naive-id`,
 * `naive-def`, `sigma`, `rho`, `delta`, `auto` or `graph`. `info` may be null.
 *
 * # Safety
 * `m` must be a live structure handle, `method` a valid C string, `out` a
 * valid pointer and `info` null or valid.
 */
enum FidStatus fid_synthesize(const struct FidStructure *m,
                              const char *method,
                              struct FidFormula **out,
                              struct FidSynthesisInfo *info);

/**
 * Whether `f` holds in `m` and in no other structure of the same order up to
 * isomorphism. Graphs are compared with graphs only.
 *
 * # Safety
 * `m` and `f` must be live handles and `out` a valid pointer.
 */
enum FidStatus fid_verify_identifies(const struct FidStructure *m,
                                     const struct FidFormula *f,
                                     bool *out);

/**
 * Least number of rounds in which Spoiler wins the game on `a` and `b`.
 * A negative `alternations` means unrestricted; `max_rounds = 0` selects
 * `max(n, n') + 1`. `found` is false when Spoiler cannot win within the cap,
 * which includes isomorphic inputs.
 *
 * # Safety
 * `a` and `b` must be live structure handles; `value` and `found` valid pointers.
 */
enum FidStatus fid_game_value(const struct FidStructure *a,
                              const struct FidStructure *b,
                              int64_t alternations,
                              size_t max_rounds,
                              size_t *value,
                              bool *found);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FID_H */
