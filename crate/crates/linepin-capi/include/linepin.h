#ifndef LINEPIN_H
#define LINEPIN_H

/* Generated by cbindgen from the linepin-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. Anything but Ok leaves output pointers null.
 */
typedef enum LinepinStatus {
  LINEPIN_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  LINEPIN_STATUS_NULL_ARG = 1,
  /**
   * An input string was not valid UTF-8.
   */
  LINEPIN_STATUS_UTF8 = 2,
  /**
   * The document or an argument could not be parsed.
   */
  LINEPIN_STATUS_PARSE = 3,
  /**
   * The input does not satisfy a precondition of the operation.
   */
  LINEPIN_STATUS_PRECONDITION = 4,
  /**
   * Internal failure; should not happen.
   */
  LINEPIN_STATUS_INTERNAL = 5,
} LinepinStatus;

/**
 * Opaque handle to a parsed document.
 */
typedef struct LinepinDoc LinepinDoc;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON document into a handle stored in `*out`.
 *
 * # Safety
 * `text` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer.
 */
enum LinepinStatus linepin_doc_parse(const char *text, struct LinepinDoc **out);

/**
 * Releases a document handle. Null is a no-op.
 *
 * # Safety
 * `doc` must have come from [`linepin_doc_parse`] and not be freed twice.
 */
void linepin_doc_free(struct LinepinDoc *doc);

/**
 * Decides pinning for the document's family and writes the verdict JSON
 * to `*out_json`.
 *
 * # Safety
 * `doc` must be a live handle and `out_json` writable for one pointer.
 */
enum LinepinStatus linepin_check(const struct LinepinDoc *doc, char **out_json);

/**
 * Reduces the document's family to an irreducible pinning subfamily and
 * writes {"kept":[...]} with the surviving indices.
 *
 * # Safety
 * As for [`linepin_check`].
 */
enum LinepinStatus linepin_minimize(const struct LinepinDoc *doc, char **out_json);

/**
 * Names the minimal orthogonal pinning class of the document's constraint
 * family, as {"class":"..."}.
 *
 * # Safety
 * As for [`linepin_check`].
 */
enum LinepinStatus linepin_classify(const struct LinepinDoc *doc, char **out_json);

/**
 * Replaces each constraint by its orthogonal companion and writes the
 * resulting document JSON.
 *
 * # Safety
 * As for [`linepin_check`].
 */
enum LinepinStatus linepin_orthogonalize(const struct LinepinDoc *doc, char **out_json);

/**
 * Emits a named example family as document JSON. Pass a negative `n`
 * when the family takes no size parameter.
 *
 * # Safety
 * `name` must point to a NUL-terminated string and `out_json` to writable
 * storage for one pointer.
 */
enum LinepinStatus linepin_generate(const char *name, int n, char **out_json);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must have come from this library and not be freed twice.
 */
void linepin_string_free(char *s);

/**
 * Library version as a static string; do not free.
 */
const char *linepin_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LINEPIN_H */
