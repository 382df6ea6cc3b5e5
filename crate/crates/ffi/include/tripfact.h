#ifndef TRIPFACT_H
#define TRIPFACT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TfClass {
  TF_CLASS_NOT_FACTORISATION = 0,
  TF_CLASS_TRIVIAL = 1,
  TF_CLASS_DEGENERATE = 2,
  TF_CLASS_NONDEGENERATE = 3,
} TfClass;

/**
 * Return codes. The nonzero values match the command-line exit codes where
 * they overlap.
 */
typedef enum TfStatusCode {
  TF_STATUS_CODE_OK = 0,
  /**
   * Unclassified library error.
   */
  TF_STATUS_CODE_ERROR = 1,
  /**
   * Malformed input or mismatched degrees.
   */
  TF_STATUS_CODE_PARSE = 2,
  /**
   * A configured ceiling was exceeded.
   */
  TF_STATUS_CODE_CEILING = 3,
  /**
   * An internal consistency check failed.
   */
  TF_STATUS_CODE_ASSERTION = 4,
  /**
   * A required pointer was null.
   */
  TF_STATUS_CODE_NULL_POINTER = 5,
  /**
   * A panic was caught at the boundary.
   */
  TF_STATUS_CODE_PANIC = 6,
} TfStatusCode;

/**
 * A permutation group.
 */
typedef struct TfGroup TfGroup;

/**
 * A triple `(G, A, B)`.
 */
typedef struct TfTriple TfTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a group file (cycle notation, one generator per line, optional
 * `degree N` header).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TfStatusCode tf_group_from_cycles(const char *text, struct TfGroup **out);

/**
 * The degree of the group.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum TfStatusCode tf_group_degree(const struct TfGroup *g, size_t *out);

/**
 * The group order; `TF_STATUS_CODE_CEILING` if it does not fit in 64 bits.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum TfStatusCode tf_group_order(const struct TfGroup *g, uint64_t *out);

/**
 * Membership of a permutation given in cycle notation.
 *
 * # Safety
 * `g` must be a live handle, `perm` a NUL-terminated string and `out` a
 * valid pointer.
 */
enum TfStatusCode tf_group_contains(const struct TfGroup *g, const char *perm, bool *out);

/**
 * # Safety
 * `g` must be null or a handle from this library, freed at most once.
 */
void tf_group_free(struct TfGroup *g);

/**
 * Builds a triple from three groups of equal degree; `a` and `b` must be
 * subgroups of `g`. The inputs are copied and stay owned by the caller.
 *
 * # Safety
 * The group handles must be live and `out` a valid pointer.
 */
enum TfStatusCode tf_triple_new(const struct TfGroup *g,
                                const struct TfGroup *a,
                                const struct TfGroup *b,
                                struct TfTriple **out);

/**
 * Parses a triple file with `G:`, `A:` and `B:` sections.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TfStatusCode tf_triple_from_text(const char *text, struct TfTriple **out);

/**
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum TfStatusCode tf_triple_classify(const struct TfTriple *t, enum TfClass *out);

/**
 * The classification report as JSON; release with [`tf_string_free`].
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum TfStatusCode tf_triple_report_json(const struct TfTriple *t, char **out);

/**
 * # Safety
 * `t` must be null or a handle from this library, freed at most once.
 */
void tf_triple_free(struct TfTriple *t);

/**
 * The message of the last failed call on this thread, or null. Release
 * with [`tf_string_free`].
 */
char *tf_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void tf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIPFACT_H */
