#ifndef IDRE_H
#define IDRE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IdreStatus {
  IDRE_STATUS_OK = 0,
  /**
   * The expression is not deterministic, or the word is rejected.
   */
  IDRE_STATUS_NEGATIVE = 1,
  IDRE_STATUS_INVALID_ARGUMENT = 2,
  IDRE_STATUS_PARSE_ERROR = 3,
  /**
   * A size or time bound was hit.
   */
  IDRE_STATUS_RESOURCE = 4,
  /**
   * The bounded oracle could not decide.
   */
  IDRE_STATUS_INCONCLUSIVE = 5,
  IDRE_STATUS_PANIC = 6,
} IdreStatus;

typedef enum IdreEngine {
  IDRE_ENGINE_W = 0,
  IDRE_ENGINE_UNMARKED = 1,
  IDRE_ENGINE_MARKED = 2,
  IDRE_ENGINE_ORACLE = 3,
} IdreEngine;

typedef enum IdreVariant {
  IDRE_VARIANT_G1 = 1,
  IDRE_VARIANT_G2 = 2,
} IdreVariant;

/**
 * Opaque expression handle.
 */
typedef struct IdreExpr IdreExpr;

/**
 * Result of [`idre_check`]. `locus` and `clause` are null for deterministic
 * expressions and for the oracle engine; release them with
 * [`idre_verdict_clear`].
 */
typedef struct IdreVerdict {
  bool deterministic;
  char *locus;
  char *clause;
  uint32_t visited;
} IdreVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *idre_last_error_message(void);

/**
 * Parses and normalises `text` into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IdreStatus idre_parse(const char *text, struct IdreExpr **out);

/**
 * # Safety
 * `expr` must be null or a handle not yet freed.
 */
void idre_expr_free(struct IdreExpr *expr);

/**
 * Printed form of the expression, or null on a null handle.
 *
 * # Safety
 * `expr` must be null or a live handle.
 */
char *idre_expr_print(const struct IdreExpr *expr);

/**
 * Size with counters weighted by the bit lengths of their bounds; 0 on a
 * null handle.
 *
 * # Safety
 * `expr` must be null or a live handle.
 */
uint64_t idre_expr_size(const struct IdreExpr *expr);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void idre_string_free(char *s);

/**
 * Decides determinism. Returns `Ok` or `Negative` with `*out` filled, or
 * `Inconclusive` when the oracle engine runs out of words.
 *
 * # Safety
 * `expr` must be a live handle and `out` a valid pointer.
 */
enum IdreStatus idre_check(const struct IdreExpr *expr,
                           enum IdreEngine engine,
                           struct IdreVerdict *out);

/**
 * Releases the strings of a verdict and nulls them.
 *
 * # Safety
 * `v` must be null or point to a verdict filled by [`idre_check`].
 */
void idre_verdict_clear(struct IdreVerdict *v);

/**
 * Membership of `word` (letters `a`-`z`, empty string for ε). Returns `Ok`
 * when accepted and `Negative` when rejected.
 *
 * # Safety
 * `expr` must be a live handle and `word` a NUL-terminated string.
 */
enum IdreStatus idre_match(const struct IdreExpr *expr, const char *word);

/**
 * Generates one deterministic expression over the first `alphabet_size`
 * letters with size at most `max_size`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum IdreStatus idre_generate(uint32_t alphabet_size,
                              uint64_t max_size,
                              uint64_t seed,
                              struct IdreExpr **out);

/**
 * Nonterminal and production counts of a grammar.
 *
 * # Safety
 * `nonterminals` and `productions` must be valid pointers.
 */
enum IdreStatus idre_grammar_stats(enum IdreVariant variant,
                                   uint32_t sigma,
                                   bool simplified,
                                   uint64_t *nonterminals,
                                   uint64_t *productions);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IDRE_H */
