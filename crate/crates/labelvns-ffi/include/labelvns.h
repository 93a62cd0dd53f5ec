/* C interface for the labelvns solver library. */

#ifndef LABELVNS_H
#define LABELVNS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Problem selector.
typedef enum LvnsProblem {
  // Minimize the number of labels spanning the graph; `kbar` is ignored.
  LVNS_PROBLEM_MLST = 0,
  // Minimize components using at most `kbar` labels.
  LVNS_PROBLEM_KLSF = 1,
} LvnsProblem;

// Status code of every fallible call.
typedef enum LvnsStatus {
  LVNS_STATUS_OK = 0,
  // A required pointer argument was null.
  LVNS_STATUS_NULL_POINTER = 1,
  // A parameter was out of its domain (density, label budget, ...).
  LVNS_STATUS_INVALID_ARGUMENT = 2,
  // The instance text is not well-formed.
  LVNS_STATUS_PARSE_ERROR = 3,
  // The graph is disconnected under the full label set, so the
  // spanning-tree problem has no feasible solution.
  LVNS_STATUS_UNSOLVABLE = 4,
  // The instance exceeds the exact solver's label cap.
  LVNS_STATUS_LABEL_LIMIT_EXCEEDED = 5,
  // Neither an iteration limit nor a time limit was given.
  LVNS_STATUS_NO_BUDGET = 6,
  // The instance text is not valid UTF-8.
  LVNS_STATUS_INVALID_UTF8 = 7,
  // A panic was caught at the boundary; a bug in this library.
  LVNS_STATUS_INTERNAL_ERROR = 8,
} LvnsStatus;

// Search scheme selector.
typedef enum LvnsVariant {
  LVNS_VARIANT_BASIC = 0,
  LVNS_VARIANT_COMPLEMENTARY = 1,
  LVNS_VARIANT_INTELLIGENT = 2,
} LvnsVariant;

// Opaque edge-labelled graph handle.
typedef struct LvnsGraph LvnsGraph;

// Opaque solution handle, produced by the heuristic or the exact solver.
typedef struct LvnsSolution LvnsSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Detail message for the most recent failure on the calling thread. The
// pointer stays valid until this thread's next call into the library.
const char *lvns_last_error(void);

// Parses instance text (header line `n m l`, then one `u v c` line per
// edge) into a graph handle owned by the caller.
//
// # Safety
// `text` must point to a nul-terminated string and `out` to writable
// storage for one pointer.
enum LvnsStatus lvns_graph_parse(const char *text, struct LvnsGraph **out);

// Generates a seeded random instance; identical parameters give identical
// graphs.
//
// # Safety
// `out` must point to writable storage for one pointer.
enum LvnsStatus lvns_graph_generate(size_t node_count,
                                    size_t label_count,
                                    double edge_density,
                                    uint64_t seed,
                                    struct LvnsGraph **out);

// Renders the graph in canonical instance text as a nul-terminated string;
// release it with [`lvns_string_free`].
//
// # Safety
// `graph` must be a live handle from this library and `out_text` writable.
enum LvnsStatus lvns_graph_write(const struct LvnsGraph *graph, char **out_text);

// Number of nodes; 0 for a null handle.
size_t lvns_graph_node_count(const struct LvnsGraph *graph);

// Number of edges; 0 for a null handle.
size_t lvns_graph_edge_count(const struct LvnsGraph *graph);

// Number of labels; 0 for a null handle.
size_t lvns_graph_label_count(const struct LvnsGraph *graph);

// Releases a graph handle; accepts null.
void lvns_graph_free(struct LvnsGraph *graph);

// Releases a string returned by this library; accepts null.
void lvns_string_free(char *text);

// Runs the heuristic solver. `kbar` is the label budget for the forest
// problem and ignored otherwise; a zero `max_iterations` or `max_time_ms`
// means "no limit of that kind", but at least one must be positive.
//
// # Safety
// `graph` must be a live handle from this library and `out` writable.
enum LvnsStatus lvns_solve(const struct LvnsGraph *graph,
                           enum LvnsProblem problem,
                           size_t kbar,
                           enum LvnsVariant variant,
                           uint64_t seed,
                           uint64_t max_iterations,
                           uint64_t max_time_ms,
                           struct LvnsSolution **out);

// Runs the exact solver (exhaustive enumeration; limited to small label
// counts). `kbar` as in [`lvns_solve`].
//
// # Safety
// `graph` must be a live handle from this library and `out` writable.
enum LvnsStatus lvns_oracle(const struct LvnsGraph *graph,
                            enum LvnsProblem problem,
                            size_t kbar,
                            struct LvnsSolution **out);

// Number of labels in the solution; 0 for a null handle.
size_t lvns_solution_label_count(const struct LvnsSolution *solution);

// Component count of the solution's induced subgraph; 0 for a null handle.
size_t lvns_solution_component_count(const struct LvnsSolution *solution);

// Whether the solution satisfies its problem's feasibility rule; false for
// a null handle.
bool lvns_solution_feasible(const struct LvnsSolution *solution);

// Completed search iterations (0 for exact solutions); 0 for a null handle.
uint64_t lvns_solution_iterations(const struct LvnsSolution *solution);

// Wall-clock milliseconds of the solver run (0 for exact solutions); 0 for
// a null handle.
uint64_t lvns_solution_wall_ms(const struct LvnsSolution *solution);

// Subsets examined by the exact solver (0 for heuristic solutions); 0 for a
// null handle.
uint64_t lvns_solution_subsets_examined(const struct LvnsSolution *solution);

// Copies the solution's label ids (ascending) into `buf` (at most `cap`
// elements) and returns the full label count; call with `cap = 0` to size
// the buffer. Null `solution` gives 0.
//
// # Safety
// `buf` must point to at least `cap` writable elements when `cap > 0`.
size_t lvns_solution_labels(const struct LvnsSolution *solution, size_t *buf, size_t cap);

// Copies the solution's spanning-forest edge indices into `buf` (at most
// `cap` elements) and returns the full edge count; same contract as
// [`lvns_solution_labels`].
//
// # Safety
// `buf` must point to at least `cap` writable elements when `cap > 0`.
size_t lvns_solution_forest(const struct LvnsSolution *solution, size_t *buf, size_t cap);

// Releases a solution handle; accepts null.
void lvns_solution_free(struct LvnsSolution *solution);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LABELVNS_H */
