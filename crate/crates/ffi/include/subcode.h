#ifndef SUBCODE_H
#define SUBCODE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SubcodeConstruction {
  SUBCODE_CONSTRUCTION_LIFTED_MRD = 0,
  SUBCODE_CONSTRUCTION_LIFTED_MRD_PLUS_ONE = 1,
} SubcodeConstruction;

typedef enum SubcodeSearchStatus {
  SUBCODE_SEARCH_STATUS_COMPLETE = 0,
  SUBCODE_SEARCH_STATUS_TARGET_REACHED = 1,
  SUBCODE_SEARCH_STATUS_TIME_LIMIT = 2,
  SUBCODE_SEARCH_STATUS_NODE_LIMIT = 3,
  SUBCODE_SEARCH_STATUS_INTERRUPTED = 4,
} SubcodeSearchStatus;

/**
 * Result of every call.
 */
typedef enum SubcodeStatus {
  SUBCODE_STATUS_OK = 0,
  SUBCODE_STATUS_NULL_POINTER = 1,
  SUBCODE_STATUS_INVALID_UTF8 = 2,
  SUBCODE_STATUS_PARSE = 3,
  SUBCODE_STATUS_DOMAIN = 4,
  SUBCODE_STATUS_OVERFLOW = 5,
  SUBCODE_STATUS_BUFFER_TOO_SMALL = 6,
  SUBCODE_STATUS_PANIC = 7,
} SubcodeStatus;

/**
 * Opaque subspace code.
 */
typedef struct SubcodeCode SubcodeCode;

/**
 * Opaque conflict graph whose vertices are subspaces.
 */
typedef struct SubcodeGraph SubcodeGraph;

/**
 * Limits for [`subcode_max_clique`]; zero means unlimited or unset.
 */
typedef struct SubcodeSearchOptions {
  uint64_t time_limit_ms;
  uint64_t node_limit;
  size_t target;
  size_t threads;
  uint64_t seed;
  size_t warm_start;
} SubcodeSearchOptions;

typedef struct SubcodeCliqueResult {
  size_t lower;
  size_t upper;
  bool optimal;
  uint64_t nodes;
  uint64_t elapsed_ms;
  enum SubcodeSearchStatus status;
} SubcodeCliqueResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *subcode_last_error(void);

void subcode_string_free(char *s);

/**
 * Parses a code in the text format used by the command line tool.
 */
enum SubcodeStatus subcode_code_parse(const char *text, struct SubcodeCode **out);

/**
 * Canonical text of a code; free it with [`subcode_string_free`].
 */
enum SubcodeStatus subcode_code_emit(const struct SubcodeCode *code, char **out);

void subcode_code_free(struct SubcodeCode *code);

enum SubcodeStatus subcode_code_len(const struct SubcodeCode *code, size_t *out);

/**
 * Minimum subspace distance, or -1 for codes with fewer than two codewords.
 */
enum SubcodeStatus subcode_code_min_distance(const struct SubcodeCode *code, int64_t *out);

/**
 * A binary lifted MRD code of `k`-subspaces of `F_2^v` with distance `d`.
 */
enum SubcodeStatus subcode_code_construct(enum SubcodeConstruction kind,
                                          size_t v,
                                          size_t k,
                                          size_t d,
                                          struct SubcodeCode **out);

/**
 * The code of orthogonal complements.
 */
enum SubcodeStatus subcode_code_orthogonal(const struct SubcodeCode *code,
                                           struct SubcodeCode **out);

/**
 * Johnson bound on `A_q(v,d;k)` over the built-in bounds table.
 */
enum SubcodeStatus subcode_bound_johnson(uint32_t q,
                                         uint32_t v,
                                         uint32_t d,
                                         uint32_t k,
                                         uint64_t *out);

/**
 * Best upper bound on `A_q(v,d;k)` the library can derive.
 */
enum SubcodeStatus subcode_bound_upper(uint32_t q,
                                       uint32_t v,
                                       uint32_t d,
                                       uint32_t k,
                                       uint64_t *out);

/**
 * `(q^k+1)(q^k+1-c)`.
 */
enum SubcodeStatus subcode_bound_one_incidence(uint32_t q, uint32_t k, uint64_t c, uint64_t *out);

/**
 * All `k`-subspaces of `F_q^v`, adjacent at distance at least `d`.
 */
enum SubcodeStatus subcode_distance_graph(uint32_t q,
                                          size_t v,
                                          size_t k,
                                          size_t d,
                                          struct SubcodeGraph **out);

/**
 * Solids that extend a `(7,17,6;3)_2` code at distance 5, adjacent at
 * distance 6.
 */
enum SubcodeStatus subcode_extension_graph(const struct SubcodeCode *code,
                                           struct SubcodeGraph **out);

void subcode_graph_free(struct SubcodeGraph *graph);

enum SubcodeStatus subcode_graph_size(const struct SubcodeGraph *graph,
                                      size_t *vertices,
                                      size_t *edges);

/**
 * Searches for a maximum clique. Vertices of the best clique are written to
 * `clique` (ascending); `capacity` must be at least `result.lower`.
 */
enum SubcodeStatus subcode_max_clique(const struct SubcodeGraph *graph,
                                      const struct SubcodeSearchOptions *options,
                                      struct SubcodeCliqueResult *result,
                                      size_t *clique,
                                      size_t capacity);

/**
 * The code formed by the subspaces of the given vertices.
 */
enum SubcodeStatus subcode_graph_code(const struct SubcodeGraph *graph,
                                      const size_t *vertices,
                                      size_t count,
                                      struct SubcodeCode **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBCODE_H */
