/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef CTREE_H
#define CTREE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum CtreeStatus {
  CTREE_STATUS_OK = 0,
  CTREE_STATUS_PARSE_ERROR = 1,
  CTREE_STATUS_AXIOM_FAILURE = 2,
  CTREE_STATUS_UPDATE_ERROR = 3,
  CTREE_STATUS_CHECK_FAILURE = 4,
  CTREE_STATUS_INVALID_ARGUMENT = 5,
  CTREE_STATUS_NULL_POINTER = 6,
  CTREE_STATUS_PANIC = 7,
} CtreeStatus;

/**
 * Beliefs over one document's space after a sequence of updates.
 */
typedef struct CtreeBelief CtreeBelief;

/**
 * A parsed document. Its space may violate the axioms; see
 * [`ctree_document_validate`].
 */
typedef struct CtreeDocument CtreeDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *ctree_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void ctree_string_free(char *s);

/**
 * Parses `.ctree` text. Axiom violations are not errors here.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum CtreeStatus ctree_document_parse(const char *text, struct CtreeDocument **out);

/**
 * # Safety
 * `doc` must come from [`ctree_document_parse`] and not be used afterwards.
 */
void ctree_document_free(struct CtreeDocument *doc);

/**
 * Canonical text of the document.
 *
 * # Safety
 * `doc` must be a live handle; `out` must be writable.
 */
enum CtreeStatus ctree_document_serialize(const struct CtreeDocument *doc, char **out);

/**
 * Checks the axioms. Returns `AXIOM_FAILURE` if any fails; the per-axiom
 * report is written to `report` either way when it is not null.
 *
 * # Safety
 * `doc` must be a live handle; `report` may be null.
 */
enum CtreeStatus ctree_document_validate(const struct CtreeDocument *doc, char **report);

/**
 * DOT rendering. With `intervention` set to `VAR=VALUE` the intervention
 * on that value is drawn and its event highlighted; pass null for a plain
 * tree.
 *
 * # Safety
 * `doc` must be a live handle; `intervention` may be null; `out` must be
 * writable.
 */
enum CtreeStatus ctree_document_to_dot(const struct CtreeDocument *doc,
                                       const char *intervention,
                                       char **out);

/**
 * Runs the brute-force checks. Returns `CHECK_FAILURE` if any fails; the
 * report lines go to `report` when it is not null.
 *
 * # Safety
 * `doc` must be a live handle; `report` may be null.
 */
enum CtreeStatus ctree_document_check(const struct CtreeDocument *doc, char **report);

/**
 * Runs a query script (the same steps as `ctree query`) and returns what
 * it prints.
 *
 * # Safety
 * `doc` must be a live handle; `script` a nul-terminated string; `out`
 * writable.
 */
enum CtreeStatus ctree_document_query(const struct CtreeDocument *doc,
                                      const char *script,
                                      char **out);

/**
 * Prior beliefs over the document's space. The belief keeps its own copy
 * of the document.
 *
 * # Safety
 * `doc` must be a live handle; `out` must be writable.
 */
enum CtreeStatus ctree_belief_new(const struct CtreeDocument *doc, struct CtreeBelief **out);

/**
 * # Safety
 * `belief` must come from [`ctree_belief_new`] and not be used afterwards.
 */
void ctree_belief_free(struct CtreeBelief *belief);

/**
 * Conditions on `var = value`. On failure the belief is unchanged.
 *
 * # Safety
 * `belief` must be a live handle; `var` and `value` nul-terminated strings.
 */
enum CtreeStatus ctree_belief_observe(struct CtreeBelief *belief,
                                      const char *var,
                                      const char *value);

/**
 * Intervenes to make `var = value` certain. On failure the belief is
 * unchanged.
 *
 * # Safety
 * `belief` must be a live handle; `var` and `value` nul-terminated strings.
 */
enum CtreeStatus ctree_belief_act(struct CtreeBelief *belief, const char *var, const char *value);

/**
 * Posterior of `var` as `var value num/den` lines.
 *
 * # Safety
 * `belief` must be a live handle; `var` a nul-terminated string; `out`
 * writable.
 */
enum CtreeStatus ctree_belief_posterior(const struct CtreeBelief *belief,
                                        const char *var,
                                        char **out);

/**
 * Exact posterior probability of `var = value` as `num/den`.
 *
 * # Safety
 * `belief` must be a live handle; `var` and `value` nul-terminated strings;
 * `out` writable.
 */
enum CtreeStatus ctree_belief_probability(const struct CtreeBelief *belief,
                                          const char *var,
                                          const char *value,
                                          char **out);

/**
 * Posterior probability of `var = value`, rounded to a double.
 *
 * # Safety
 * `belief` must be a live handle; `var` and `value` nul-terminated strings;
 * `out` writable.
 */
enum CtreeStatus ctree_belief_probability_f64(const struct CtreeBelief *belief,
                                              const char *var,
                                              const char *value,
                                              double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CTREE_H */
