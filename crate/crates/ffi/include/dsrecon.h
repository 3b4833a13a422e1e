#ifndef DSRECON_H
#define DSRECON_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DsStatus {
  DS_STATUS_OK = 0,
  DS_STATUS_NULL_POINTER = 1,
  DS_STATUS_INVALID_UTF8 = 2,
  DS_STATUS_INVALID_WORD = 3,
  DS_STATUS_LENGTH_MISMATCH = 4,
  DS_STATUS_EQUAL_INPUTS = 5,
  DS_STATUS_OUT_OF_RANGE = 6,
  DS_STATUS_INVALID_PARAMS = 7,
  DS_STATUS_LIMIT_EXCEEDED = 8,
  DS_STATUS_BALL_TOO_SMALL = 9,
  DS_STATUS_BUFFER_TOO_SMALL = 10,
  DS_STATUS_FAILED = 11,
  DS_STATUS_PANIC = 12,
} DsStatus;

typedef enum DsBallKind {
  DS_BALL_KIND_DEL = 0,
  DS_BALL_KIND_SUB = 1,
  DS_BALL_KIND_DS = 2,
} DsBallKind;

typedef enum DsCaseTag {
  DS_CASE_TAG_ADJACENT_TRANSPOSITION = 0,
  DS_CASE_TAG_SINGLE_FLIP = 1,
  DS_CASE_TAG_RUN_SHIFT = 2,
  DS_CASE_TAG_ALTERNATING_BLOCK = 3,
  DS_CASE_TAG_TWO_FLIPS = 4,
  DS_CASE_TAG_SHIFTED_PAIR = 5,
  DS_CASE_TAG_GENERIC = 6,
} DsCaseTag;

typedef enum DsDecodeStatus {
  DS_DECODE_STATUS_UNIQUE = 0,
  DS_DECODE_STATUS_AMBIGUOUS = 1,
  DS_DECODE_STATUS_INCONSISTENT = 2,
} DsDecodeStatus;

/**
 * Opaque sorted set of words of one length.
 */
typedef struct DsBall DsBall;

/**
 * Opaque code: a family with its parameters at a fixed length.
 */
typedef struct DsCode DsCode;

/**
 * Opaque binary word.
 */
typedef struct DsWord DsWord;

/**
 * Sizes and shape of a pair of distinct words of equal length.
 */
typedef struct DsPairInfo {
  size_t deletion_common;
  size_t substitution_common;
  size_t hamming;
  size_t ds_common;
  enum DsCaseTag case_tag;
} DsPairInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * success. Valid until the next call into the library on this thread.
 */
const char *ds_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void ds_string_free(char *s);

/**
 * Parses a string of '0'/'1' symbols.
 *
 * # Safety
 * `text_ptr` must be a NUL-terminated string; `out` must be writable.
 */
enum DsStatus ds_word_parse(const char *text_ptr, struct DsWord **out);

/**
 * # Safety
 * `word` must be NULL or a handle from this library, freed once.
 */
void ds_word_free(struct DsWord *word);

/**
 * Length of `word`, or 0 for NULL.
 *
 * # Safety
 * `word` must be NULL or a live handle.
 */
size_t ds_word_len(const struct DsWord *word);

/**
 * Writes the word's symbols into `buf`. `needed` (optional) receives the
 * buffer size required including the terminator.
 *
 * # Safety
 * `buf` must have room for `cap` bytes; `needed` may be NULL.
 */
enum DsStatus ds_word_text(const struct DsWord *word, char *buf, size_t cap, size_t *needed);

/**
 * Ball of `word` under one deletion (`DEL`), at most one substitution
 * (`SUB`) or one deletion then at most one substitution (`DS`).
 *
 * # Safety
 * `word` must be a live handle; `out` must be writable.
 */
enum DsStatus ds_ball_new(const struct DsWord *word, enum DsBallKind kind, struct DsBall **out);

/**
 * Common part of the two words' balls of the given kind.
 *
 * # Safety
 * `x` and `y` must be live handles; `out` must be writable.
 */
enum DsStatus ds_ball_intersection(const struct DsWord *x,
                                   const struct DsWord *y,
                                   enum DsBallKind kind,
                                   struct DsBall **out);

/**
 * # Safety
 * `ball` must be NULL or a handle from this library, freed once.
 */
void ds_ball_free(struct DsBall *ball);

/**
 * Number of members, or 0 for NULL.
 *
 * # Safety
 * `ball` must be NULL or a live handle.
 */
size_t ds_ball_len(const struct DsBall *ball);

/**
 * Length of the words in the ball.
 *
 * # Safety
 * `ball` must be NULL or a live handle.
 */
size_t ds_ball_word_length(const struct DsBall *ball);

/**
 * Writes the `index`-th member (0-based, lexicographic order) into `buf`.
 *
 * # Safety
 * `buf` must have room for `cap` bytes; `needed` may be NULL.
 */
enum DsStatus ds_ball_member(const struct DsBall *ball,
                             size_t index,
                             char *buf,
                             size_t cap,
                             size_t *needed);

/**
 * Whether `word` is a member of `ball`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum DsStatus ds_ball_contains(const struct DsBall *ball, const struct DsWord *word, bool *out);

/**
 * Intersection sizes and structural case of two distinct words.
 *
 * # Safety
 * `x` and `y` must be live handles; `out` must be writable.
 */
enum DsStatus ds_classify(const struct DsWord *x, const struct DsWord *y, struct DsPairInfo *out);

/**
 * Builds a code from a family id (`vt`, `inv`, `cl`, ...) and a parameter
 * list such as `"a=3,m=2"`. `params` may be NULL for families without
 * parameters.
 *
 * # Safety
 * `family` and `params` must be NULL-terminated strings; `out` writable.
 */
enum DsStatus ds_code_new(const char *family, size_t n, const char *params, struct DsCode **out);

/**
 * # Safety
 * `code` must be NULL or a handle from this library, freed once.
 */
void ds_code_free(struct DsCode *code);

/**
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum DsStatus ds_code_contains(const struct DsCode *code, const struct DsWord *word, bool *out);

/**
 * Number of codewords, by enumeration where no closed form exists.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum DsStatus ds_code_size(const struct DsCode *code, uint64_t *out);

/**
 * Draws one read of `word` through the deletion-then-substitution channel.
 *
 * # Safety
 * `word` must be a live handle; `out` must be writable.
 */
enum DsStatus ds_channel_sample(const struct DsWord *word, uint64_t seed, struct DsWord **out);

/**
 * Codewords consistent with every read. `candidates` receives a ball of
 * length-`n` words holding them; `design_reads` is the read count the code
 * was built for.
 *
 * # Safety
 * `reads` must point to `count` live word handles; outputs must be writable.
 */
enum DsStatus ds_decode(const struct DsCode *code,
                        size_t design_reads,
                        const struct DsWord *const *reads,
                        size_t count,
                        enum DsDecodeStatus *status,
                        struct DsBall **candidates);

/**
 * Runs a named verifier at length `n` with default options and returns its
 * report as JSON in `*json` (free with [`ds_string_free`]). `passed`
 * (optional) receives the verdict. A failing verdict is not an error.
 *
 * # Safety
 * `target` must be a NUL-terminated string; `json` must be writable.
 */
enum DsStatus ds_verify_json(const char *target, size_t n, bool *passed, char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DSRECON_H */
