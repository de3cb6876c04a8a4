#ifndef SIGNED_COVERS_H
#define SIGNED_COVERS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ScovStatus {
  SCOV_STATUS_OK = 0,
  /**
   * The requested cover or structure does not exist.
   */
  SCOV_STATUS_NOT_FOUND = 1,
  SCOV_STATUS_INVALID_ARGUMENT = 2,
  SCOV_STATUS_RESOURCE_LIMIT = 3,
  SCOV_STATUS_NULL_POINTER = 4,
  SCOV_STATUS_PARSE_ERROR = 5,
  SCOV_STATUS_PANIC = 6,
} ScovStatus;

/**
 * Opaque cover certificate.
 */
typedef struct ScovCover ScovCover;

/**
 * Opaque signed multigraph.
 */
typedef struct ScovGraph ScovGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *scov_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void scov_string_free(char *s);

/**
 * Parses the edge-list text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum ScovStatus scov_graph_parse(const char *text, struct ScovGraph **out);

/**
 * Builds a graph on `vertex_count` vertices from parallel arrays of
 * endpoints and signs (`-1` or `+1`).
 *
 * # Safety
 * `us`, `vs` and `signs` must each point to `edge_count` readable values
 * (they may be null when `edge_count` is 0); `out` must be writable.
 */
enum ScovStatus scov_graph_new(uint32_t vertex_count,
                               const uint32_t *us,
                               const uint32_t *vs,
                               const int8_t *signs,
                               size_t edge_count,
                               struct ScovGraph **out);

/**
 * # Safety
 * `g` must be null or a live graph handle, freed once.
 */
void scov_graph_free(struct ScovGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t scov_graph_vertex_count(const struct ScovGraph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t scov_graph_edge_count(const struct ScovGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum ScovStatus scov_graph_is_eulerian(const struct ScovGraph *g, bool *out);

/**
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum ScovStatus scov_graph_is_balanced(const struct ScovGraph *g, bool *out);

/**
 * Every edge lies in some signed circuit.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum ScovStatus scov_graph_is_flow_admissible(const struct ScovGraph *g, bool *out);

/**
 * New graph obtained by switching at the given vertices.
 *
 * # Safety
 * `g` must be a live graph handle, `vertices` must point to `len` values
 * (or be null with `len` 0) and `out` must be writable.
 */
enum ScovStatus scov_graph_switch(const struct ScovGraph *g,
                                  const uint32_t *vertices,
                                  size_t len,
                                  struct ScovGraph **out);

/**
 * The graph in edge-list text format.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum ScovStatus scov_graph_to_edge_list(const struct ScovGraph *g, char **out);

/**
 * Number of beads if the graph is a necklace, else `NotFound`.
 *
 * # Safety
 * `g` must be a live graph handle and `length` writable.
 */
enum ScovStatus scov_necklace_length(const struct ScovGraph *g, size_t *length);

/**
 * Exact search for a `k`-cover. `NotFound` means none exists.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum ScovStatus scov_find_k_cover(const struct ScovGraph *g, uint32_t k, struct ScovCover **out);

/**
 * Least `k <= k_max` with a `k`-cover, or `NotFound`.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum ScovStatus scov_min_uniform_cover(const struct ScovGraph *g, uint32_t k_max, uint32_t *out);

/**
 * # Safety
 * `c` must be null or a live cover handle, freed once.
 */
void scov_cover_free(struct ScovCover *c);

/**
 * The cover's `k`, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live cover handle.
 */
uint32_t scov_cover_k(const struct ScovCover *c);

/**
 * Number of distinct members, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live cover handle.
 */
size_t scov_cover_member_count(const struct ScovCover *c);

/**
 * Member `index`: its multiplicity, whether it is a barbell, and its
 * number of edges.
 *
 * # Safety
 * `c` must be a live cover handle; the out-pointers must be writable.
 */
enum ScovStatus scov_cover_member(const struct ScovCover *c,
                                  size_t index,
                                  uint32_t *multiplicity,
                                  bool *is_barbell,
                                  size_t *edge_count);

/**
 * Copies the edge ids of member `index` into `buf`, which must hold at
 * least the member's edge count.
 *
 * # Safety
 * `c` must be a live cover handle and `buf` must point to `cap` writable values.
 */
enum ScovStatus scov_cover_member_edges(const struct ScovCover *c,
                                        size_t index,
                                        uint32_t *buf,
                                        size_t cap);

/**
 * Checks the certificate against `g`.
 *
 * # Safety
 * `g` and `c` must be live handles and `valid` writable.
 */
enum ScovStatus scov_cover_verify(const struct ScovGraph *g,
                                  const struct ScovCover *c,
                                  bool *valid);

/**
 * The certificate as JSON: `{"k", "host", "members": [{"kind", "edges", "multiplicity"}]}`.
 *
 * # Safety
 * `c` must be a live cover handle and `out` writable.
 */
enum ScovStatus scov_cover_to_json(const struct ScovCover *c, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGNED_COVERS_H */
