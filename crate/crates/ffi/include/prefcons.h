#ifndef PREFCONS_H
#define PREFCONS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PrefconsStatus {
  PREFCONS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PREFCONS_STATUS_NULL_POINTER = 1,
  PREFCONS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed formula or KB text.
   */
  PREFCONS_STATUS_SYNTAX = 3,
  /**
   * Unknown atom, semantics, condition or theorem, or a bad structure file.
   */
  PREFCONS_STATUS_INVALID_INPUT = 4,
  /**
   * The request needs a fingerprint or set outside the enumerated frame.
   */
  PREFCONS_STATUS_UNSUPPORTED = 5,
  PREFCONS_STATUS_INTERNAL = 6,
} PrefconsStatus;

/**
 * A semantic structure with its fingerprint universe and definable family.
 */
typedef struct PrefconsFrame PrefconsFrame;

/**
 * A consequence relation over the frame it was induced on.
 */
typedef struct PrefconsRelation PrefconsRelation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *prefcons_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *prefcons_version(void);

/**
 * Build a frame for `semantics` (`classical`, `four` or `j3`) over the
 * comma-separated `atoms`. `kb` may be null; its formulas seed the universe
 * when the full closure exceeds the cap.
 *
 * # Safety
 * `semantics` and `atoms` must be valid NUL-terminated strings, `kb` null or
 * such a string, and `out` a valid pointer to writable storage.
 */
enum PrefconsStatus prefcons_frame_new(const char *semantics,
                                       const char *atoms,
                                       const char *kb,
                                       struct PrefconsFrame **out);

/**
 * # Safety
 * `frame` must be null or a handle from [`prefcons_frame_new`] not yet freed.
 */
void prefcons_frame_free(struct PrefconsFrame *frame);

/**
 * Number of valuations, or 0 for a null handle.
 *
 * # Safety
 * `frame` must be null or a live frame handle.
 */
size_t prefcons_frame_valuations(const struct PrefconsFrame *frame);

/**
 * Number of fingerprints in the universe, or 0 for a null handle.
 *
 * # Safety
 * `frame` must be null or a live frame handle.
 */
size_t prefcons_frame_universe_size(const struct PrefconsFrame *frame);

/**
 * Number of definable model sets, or 0 for a null handle.
 *
 * # Safety
 * `frame` must be null or a live frame handle.
 */
size_t prefcons_frame_definable_size(const struct PrefconsFrame *frame);

/**
 * Whether the universe and definable family are fully enumerated.
 *
 * # Safety
 * `frame` must be null or a live frame handle.
 */
bool prefcons_frame_is_exhaustive(const struct PrefconsFrame *frame);

/**
 * Induce a relation on `frame` from a preference structure in the text
 * format, or the identity structure when `structure` is null. The relation
 * keeps the frame alive on its own.
 *
 * # Safety
 * `frame` must be a live frame handle, `structure` null or a valid
 * NUL-terminated string, and `out` a valid pointer to writable storage.
 */
enum PrefconsStatus prefcons_relation_new(const struct PrefconsFrame *frame,
                                          const char *structure,
                                          bool discriminative,
                                          struct PrefconsRelation **out);

/**
 * # Safety
 * `rel` must be null or a handle from [`prefcons_relation_new`] not yet freed.
 */
void prefcons_relation_free(struct PrefconsRelation *rel);

/**
 * Whether `gamma |~ alpha`. `gamma` holds one formula per line and may be
 * empty.
 *
 * # Safety
 * `rel` must be a live relation handle, `gamma` and `alpha` valid
 * NUL-terminated strings, and `out` a valid pointer to writable storage.
 */
enum PrefconsStatus prefcons_entails(const struct PrefconsRelation *rel,
                                     const char *gamma,
                                     const char *alpha,
                                     bool *out);

/**
 * Witness formulas of every consequence of `gamma`, canonically ordered and
 * newline-separated. Free the result with [`prefcons_string_free`].
 *
 * # Safety
 * `rel` must be a live relation handle, `gamma` a valid NUL-terminated
 * string, and `out` a valid pointer to writable storage.
 */
enum PrefconsStatus prefcons_consequences(const struct PrefconsRelation *rel,
                                          const char *gamma,
                                          char **out);

/**
 * Check conditions such as `c0..c3,P` on the relation. `report` may be
 * null; otherwise it receives a `key=value` report to be freed with
 * [`prefcons_string_free`].
 *
 * # Safety
 * `rel` must be a live relation handle, `conditions` a valid NUL-terminated
 * string, `pass` a valid pointer, and `report` null or a valid pointer.
 */
enum PrefconsStatus prefcons_check(const struct PrefconsRelation *rel,
                                   const char *conditions,
                                   bool *pass,
                                   char **report);

/**
 * Verify a theorem (`repClaSyn`, `repGen`, `repArgSyn`, `repGenArg`,
 * `karl-search`, `P-bridge` or `lemmas`) over `seeds` seeds starting at
 * `first_seed`. Null `semantics` or `atoms` select the theorem's default
 * target. `report` may be null; otherwise it receives the `key=value`
 * report.
 *
 * # Safety
 * `theorem` must be a valid NUL-terminated string, `semantics` and `atoms`
 * null or such strings, `pass` a valid pointer, and `report` null or a
 * valid pointer.
 */
enum PrefconsStatus prefcons_verify(const char *theorem,
                                    const char *semantics,
                                    const char *atoms,
                                    uint64_t seeds,
                                    uint64_t first_seed,
                                    bool *pass,
                                    char **report);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void prefcons_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREFCONS_H */
