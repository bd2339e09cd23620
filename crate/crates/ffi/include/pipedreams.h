#ifndef PIPEDREAMS_H
#define PIPEDREAMS_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PdStatus {
  PD_STATUS_OK = 0,
  PD_STATUS_NULL_POINTER = 1,
  PD_STATUS_INVALID_UTF8 = 2,
  PD_STATUS_INVALID_ARGUMENT = 3,
  PD_STATUS_CAP_EXCEEDED = 4,
  PD_STATUS_PRECONDITION = 5,
  PD_STATUS_UNSUPPORTED = 6,
  PD_STATUS_PANIC = 7,
} PdStatus;

/**
 * A permutation of `1..=n`.
 */
typedef struct PdPermutation PdPermutation;

/**
 * A reduced pipe dream.
 */
typedef struct PdPipeDream PdPipeDream;

/**
 * A subword complex `SC(Q, w)` of a finite Coxeter group.
 */
typedef struct PdSubwordComplex PdSubwordComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call; do not free.
 */
const char *pd_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void pd_string_free(char *s);

/**
 * Parses one-line notation such as `"1432"` or `"1,4,3,2"`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum PdStatus pd_permutation_parse(const char *text, struct PdPermutation **out);

/**
 * # Safety
 * `p` must come from this library, or be null.
 */
void pd_permutation_free(struct PdPermutation *p);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_permutation_size(const struct PdPermutation *p, size_t *out);

/**
 * Number of inversions.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_permutation_length(const struct PdPermutation *p, size_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_permutation_to_string(const struct PdPermutation *p, char **out);

/**
 * Whether `a <= b` in right weak order.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_permutation_weak_leq(const struct PdPermutation *a,
                                      const struct PdPermutation *b,
                                      bool *out);

/**
 * Number of reduced pipe dreams of `omega`, or of the acyclic ones.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_pipe_dream_count(const struct PdPermutation *omega,
                                  bool acyclic_only,
                                  size_t cap,
                                  size_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_greedy(const struct PdPermutation *omega, struct PdPipeDream **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_antigreedy(const struct PdPermutation *omega, struct PdPipeDream **out);

/**
 * Insertion of `pi` into the pipe dreams of `omega`; needs `pi <= omega`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_insert(const struct PdPermutation *pi,
                        const struct PdPermutation *omega,
                        struct PdPipeDream **out);

/**
 * Sweep of `pi` through the pipe dreams of `omega`; needs `pi <= omega`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_sweep(const struct PdPermutation *pi,
                       const struct PdPermutation *omega,
                       struct PdPipeDream **out);

/**
 * # Safety
 * `text` must be a nul-terminated JSON pipe dream and `out` writable.
 */
enum PdStatus pd_pipe_dream_from_json(const char *text, struct PdPipeDream **out);

/**
 * # Safety
 * `p` must come from this library, or be null.
 */
void pd_pipe_dream_free(struct PdPipeDream *p);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_pipe_dream_is_acyclic(const struct PdPipeDream *p, bool *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_pipe_dream_to_json(const struct PdPipeDream *p, char **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_pipe_dream_to_ascii(const struct PdPipeDream *p, char **out);

/**
 * Whether pipe dream classes of `omega` form a lattice congruence whose
 * quotient is the increasing flip order.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_verify_congruence(const struct PdPermutation *omega, size_t cap, bool *out);

/**
 * Builds `SC(Q, w)` from a type tag such as `"A3"`, a 1-based word such as
 * `"1,2,1"` and an element (`"w0"`, a word, or a permutation in type A).
 *
 * # Safety
 * Strings must be nul-terminated and `out` writable.
 */
enum PdStatus pd_subword_complex_new(const char *cartan_type,
                                     const char *word,
                                     const char *omega,
                                     bool allow_large,
                                     struct PdSubwordComplex **out);

/**
 * # Safety
 * `sc` must come from this library, or be null.
 */
void pd_subword_complex_free(struct PdSubwordComplex *sc);

/**
 * Facets, one per line, as 1-based positions like `1,3,4`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_subword_complex_facets(const struct PdSubwordComplex *sc, size_t cap, char **out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_subword_complex_facet_count(const struct PdSubwordComplex *sc,
                                             size_t cap,
                                             size_t *out);

/**
 * The facet the sweep algorithm assigns to `pi`, written like `1,3,4`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_subword_complex_sweep(const struct PdSubwordComplex *sc,
                                       const char *pi,
                                       char **out);

/**
 * Evaluates both conjectures on an alternating word.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PdStatus pd_subword_complex_conjectures(const struct PdSubwordComplex *sc,
                                             size_t cap,
                                             bool *congruence,
                                             bool *quotient);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PIPEDREAMS_H */
