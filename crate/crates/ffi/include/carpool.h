#ifndef CARPOOL_H
#define CARPOOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Algorithm run by [`carpool_simulate`].
 */
typedef enum CarpoolAlgorithm {
  CARPOOL_ALGORITHM_GREEDY = 0,
  CARPOOL_ALGORITHM_RANDOM = 1,
  CARPOOL_ALGORITHM_ONE_PLUS_BETA = 2,
  CARPOOL_ALGORITHM_COMPOSED = 3,
} CarpoolAlgorithm;

/**
 * Online rule used by a plain orienter.
 */
typedef enum CarpoolEngine {
  CARPOOL_ENGINE_GREEDY = 0,
  CARPOOL_ENGINE_RANDOM = 1,
  CARPOOL_ENGINE_ONE_PLUS_BETA = 2,
} CarpoolEngine;

/**
 * Result of every fallible call.
 */
typedef enum CarpoolStatus {
  CARPOOL_STATUS_OK = 0,
  CARPOOL_STATUS_NULL_POINTER = 1,
  CARPOOL_STATUS_INVALID_ARGUMENT = 2,
  CARPOOL_STATUS_OUT_OF_RANGE = 3,
  CARPOOL_STATUS_PRECONDITION = 4,
  CARPOOL_STATUS_INVARIANT = 5,
  CARPOOL_STATUS_IO = 6,
  CARPOOL_STATUS_PARSE = 7,
  CARPOOL_STATUS_OVERFLOW = 8,
  CARPOOL_STATUS_PANIC = 9,
} CarpoolStatus;

/**
 * Expander decomposition of a graph.
 */
typedef struct CarpoolDecomposition CarpoolDecomposition;

/**
 * Immutable multigraph.
 */
typedef struct CarpoolGraph CarpoolGraph;

/**
 * Online orientation state with its own coin stream.
 */
typedef struct CarpoolOrienter CarpoolOrienter;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the calling thread's last error message, or NULL if there is none.
 * Release with [`carpool_string_free`].
 */
char *carpool_last_error_message(void);

/**
 * Release a string returned by this library. NULL is ignored.
 */
void carpool_string_free(char *s);

/**
 * Build a graph on `n` vertices from `edge_count` pairs stored flat in
 * `endpoints` (`2 * edge_count` entries).
 */
enum CarpoolStatus carpool_graph_new(size_t n,
                                     const size_t *endpoints,
                                     size_t edge_count,
                                     struct CarpoolGraph **out);

/**
 * Read a graph from an edge-list file.
 */
enum CarpoolStatus carpool_graph_read(const char *path, struct CarpoolGraph **out);

void carpool_graph_free(struct CarpoolGraph *g);

enum CarpoolStatus carpool_graph_counts(const struct CarpoolGraph *g, size_t *n, size_t *m);

/**
 * Minimum conductance by exhaustive search (at most 20 vertices).
 */
enum CarpoolStatus carpool_graph_conductance_exact(const struct CarpoolGraph *g, double *out);

/**
 * Decompose `g` into expanders. `alpha <= 0` selects the default.
 */
enum CarpoolStatus carpool_decompose(const struct CarpoolGraph *g,
                                     double alpha,
                                     struct CarpoolDecomposition **out);

void carpool_decomposition_free(struct CarpoolDecomposition *d);

/**
 * Number of parts, number of rounds, and the largest per-vertex membership.
 */
enum CarpoolStatus carpool_decomposition_summary(const struct CarpoolDecomposition *d,
                                                 size_t *parts,
                                                 size_t *rounds,
                                                 size_t *max_membership);

/**
 * Part owning parent edge `edge`.
 */
enum CarpoolStatus carpool_decomposition_route(const struct CarpoolDecomposition *d,
                                               size_t edge,
                                               size_t *part);

/**
 * JSON report of the decomposition. Release with [`carpool_string_free`].
 */
enum CarpoolStatus carpool_decomposition_to_json(const struct CarpoolDecomposition *d, char **out);

/**
 * Orienter on `n` vertices. `beta` is used only by `CARPOOL_ENGINE_ONE_PLUS_BETA`.
 */
enum CarpoolStatus carpool_orienter_new(size_t n,
                                        double lambda,
                                        enum CarpoolEngine engine,
                                        double beta,
                                        uint64_t seed,
                                        struct CarpoolOrienter **out);

/**
 * Composed orienter running greedy inside every part of `d`.
 */
enum CarpoolStatus carpool_orienter_new_composed(const struct CarpoolDecomposition *d,
                                                 double lambda,
                                                 uint64_t seed,
                                                 struct CarpoolOrienter **out);

void carpool_orienter_free(struct CarpoolOrienter *o);

/**
 * Process the arrival `(u, v)` on a plain orienter. `*oriented` is 0 when
 * the arrival was a no-op (`u == v` under the (1+β) engine); otherwise the
 * arc is written to `tail` and `head`.
 */
enum CarpoolStatus carpool_orienter_step(struct CarpoolOrienter *o,
                                         size_t u,
                                         size_t v,
                                         bool *oriented,
                                         size_t *tail,
                                         size_t *head);

/**
 * Process the arrival of parent edge `edge` on a composed orienter.
 */
enum CarpoolStatus carpool_orienter_step_edge(struct CarpoolOrienter *o,
                                              size_t edge,
                                              size_t *tail,
                                              size_t *head);

/**
 * Current `max |disc|` and the number of processed arrivals.
 */
enum CarpoolStatus carpool_orienter_status(const struct CarpoolOrienter *o,
                                           uint64_t *max_disc,
                                           uint64_t *steps);

/**
 * `ln Φ` of the current discrepancies (finite even when `Φ` overflows).
 */
enum CarpoolStatus carpool_orienter_log_potential(const struct CarpoolOrienter *o, double *out);

/**
 * Copy the discrepancy vector into `buf`, which must hold `len >= n` entries.
 */
enum CarpoolStatus carpool_orienter_disc(const struct CarpoolOrienter *o, int64_t *buf, size_t len);

/**
 * Run one seeded experiment of `steps` arrivals and report the maximum
 * discrepancy over all steps. Non-positive `lambda`, `beta` or `alpha`
 * select the automatic values.
 */
enum CarpoolStatus carpool_simulate(const struct CarpoolGraph *g,
                                    enum CarpoolAlgorithm algorithm,
                                    uint64_t steps,
                                    uint64_t seed,
                                    double lambda,
                                    double beta,
                                    double alpha,
                                    uint64_t *max_disc);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARPOOL_H */
