#ifndef CHRONOGRAM_H
#define CHRONOGRAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChronogramStatus {
  CHRONOGRAM_STATUS_OK = 0,
  CHRONOGRAM_STATUS_MALFORMED_RECORD = 1,
  CHRONOGRAM_STATUS_CONFIG_ERROR = 2,
  CHRONOGRAM_STATUS_IO_ERROR = 3,
  CHRONOGRAM_STATUS_NULL_ARGUMENT = 4,
  CHRONOGRAM_STATUS_INVALID_UTF8 = 5,
  CHRONOGRAM_STATUS_ZERO_VECTOR = 6,
  CHRONOGRAM_STATUS_DIMENSION_MISMATCH = 7,
  CHRONOGRAM_STATUS_OUT_OF_RANGE = 8,
  CHRONOGRAM_STATUS_PANIC = 9,
} ChronogramStatus;

typedef enum ChronogramFormat {
  CHRONOGRAM_FORMAT_FIELD_TAGGED = 0,
  CHRONOGRAM_FORMAT_TSV = 1,
} ChronogramFormat;

/*
 Opaque run configuration.
 */
typedef struct ChronogramConfig ChronogramConfig;

/*
 Opaque parsed record set.
 */
typedef struct ChronogramCorpus ChronogramCorpus;

/*
 Opaque result of a completed run.
 */
typedef struct ChronogramManifest ChronogramManifest;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread, or NULL. The pointer
 stays valid until the next call into this library on the same thread.
 */
const char *chronogram_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *chronogram_version(void);

/*
 Release a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void chronogram_string_free(char *s);

/*
 Cosine similarity of two length-`n` vectors.

 # Safety
 `u` and `v` must point to `n` readable doubles; `out` must be writable.
 */
enum ChronogramStatus chronogram_cosine(const double *u, const double *v, size_t n, double *out);

/*
 New configuration holding the default parameters.

 # Safety
 `out` must be writable.
 */
enum ChronogramStatus chronogram_config_new(struct ChronogramConfig **out);

/*
 # Safety
 `config` must come from `chronogram_config_new` and not have been freed.
 */
void chronogram_config_free(struct ChronogramConfig *config);

/*
 Set one option by its command-line name without dashes, e.g.
 `("window-length", "5")`, `("input", "records.txt")`,
 `("exclude-journal", "CURRENT CONTENTS")` (accumulates).

 # Safety
 `config` must be a live handle; `key` and `value` NUL-terminated strings.
 */
enum ChronogramStatus chronogram_config_set(struct ChronogramConfig *config,
                                            const char *key,
                                            const char *value);

/*
 Run the full pipeline, writing outputs into the configured directory.

 # Safety
 `config` must be a live handle; `out` must be writable.
 */
enum ChronogramStatus chronogram_run(const struct ChronogramConfig *config,
                                     struct ChronogramManifest **out);

/*
 # Safety
 `manifest` must come from `chronogram_run` and not have been freed.
 */
void chronogram_manifest_free(struct ChronogramManifest *manifest);

/*
 Number of time windows in the run.

 # Safety
 `manifest` must be a live handle.
 */
size_t chronogram_manifest_window_count(const struct ChronogramManifest *manifest);

/*
 The run manifest as JSON; free with `chronogram_string_free`.

 # Safety
 `manifest` must be a live handle; `out` must be writable.
 */
enum ChronogramStatus chronogram_manifest_json(const struct ChronogramManifest *manifest,
                                               char **out);

/*
 Parse records from NUL-terminated text.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ChronogramStatus chronogram_corpus_parse(const char *text,
                                              enum ChronogramFormat format,
                                              struct ChronogramCorpus **out);

/*
 Parse a record file, choosing the format from its extension.

 # Safety
 `path` must be a NUL-terminated string; `out` must be writable.
 */
enum ChronogramStatus chronogram_corpus_load(const char *path, struct ChronogramCorpus **out);

/*
 # Safety
 `corpus` must come from this library and not have been freed.
 */
void chronogram_corpus_free(struct ChronogramCorpus *corpus);

/*
 Number of records.

 # Safety
 `corpus` must be a live handle.
 */
size_t chronogram_corpus_len(const struct ChronogramCorpus *corpus);

/*
 Record `index` as JSON (`id`, `authors`, `title`, `journal`, `year`);
 free with `chronogram_string_free`.

 # Safety
 `corpus` must be a live handle; `out` must be writable.
 */
enum ChronogramStatus chronogram_corpus_record_json(const struct ChronogramCorpus *corpus,
                                                    size_t index,
                                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHRONOGRAM_H */
