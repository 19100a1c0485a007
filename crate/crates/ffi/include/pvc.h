#ifndef PVC_H
#define PVC_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum PvcStatus {
  PVC_STATUS_OK = 0,
  PVC_STATUS_NULL_ARGUMENT = 1,
  PVC_STATUS_INVALID_UTF8 = 2,
  PVC_STATUS_PARSE = 3,
  PVC_STATUS_VALIDATION = 4,
  PVC_STATUS_IO = 5,
  PVC_STATUS_INTERNAL = 6,
} PvcStatus;

/**
 * Opaque lexicon handle.
 */
typedef struct PvcLexicon PvcLexicon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *pvc_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library on this thread.
 */
const char *pvc_last_error(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void pvc_string_free(char *s);

/**
 * The built-in 14-entry lexicon.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PvcStatus pvc_lexicon_builtin(struct PvcLexicon **out);

/**
 * Load and validate a lexicon file; `.json` files are read as JSON,
 * anything else as TSV.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PvcStatus pvc_lexicon_load(const char *path, struct PvcLexicon **out);

/**
 * Number of entries; 0 for NULL.
 *
 * # Safety
 * `lexicon` must be NULL or a live handle.
 */
size_t pvc_lexicon_len(const struct PvcLexicon *lexicon);

/**
 * Release a lexicon handle. NULL is ignored.
 *
 * # Safety
 * `lexicon` must come from this library and not be freed twice.
 */
void pvc_lexicon_free(struct PvcLexicon *lexicon);

/**
 * Surface of postposition `lemma` after `host` (를 after 하늘 gives 을).
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` a valid pointer.
 */
enum PvcStatus pvc_allomorph(const char *lemma, const char *host, char **out);

/**
 * Match plain text; JSON lines, one per match.
 *
 * # Safety
 * `lexicon` must be a live handle, `text` NUL-terminated, `out` valid.
 */
enum PvcStatus pvc_match_raw(const struct PvcLexicon *lexicon, const char *text, char **out);

/**
 * Classify a tagged corpus (three-column TSV); JSON lines, one per match.
 *
 * # Safety
 * `lexicon` must be a live handle, `tagged` NUL-terminated, `out` valid.
 */
enum PvcStatus pvc_classify(const struct PvcLexicon *lexicon,
                            const char *tagged,
                            bool legal_register,
                            char **out);

/**
 * Annotate a tagged corpus; cupt text.
 *
 * # Safety
 * `lexicon` must be a live handle, `tagged` NUL-terminated, `out` valid.
 */
enum PvcStatus pvc_annotate(const struct PvcLexicon *lexicon, const char *tagged, char **out);

/**
 * Mine a tagged corpus and report the top `k` stems as TSV.
 *
 * # Safety
 * `tagged` must be NUL-terminated and `out` valid.
 */
enum PvcStatus pvc_mine(const char *tagged, size_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PVC_H */
