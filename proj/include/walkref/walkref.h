// Copyright 2026 The walkref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to walkref. All handles are opaque; every call that can fail
 * returns a walkref_status and leaves a message for walkref_last_error().
 * Strings returned through char** are owned by the caller and released with
 * walkref_string_free. */

#ifndef WALKREF_WALKREF_H_
#define WALKREF_WALKREF_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WALKREF_API __declspec(dllexport)
#else
#define WALKREF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct walkref_graph walkref_graph;
typedef struct walkref_trace walkref_trace;

typedef enum {
  WALKREF_OK = 0,
  WALKREF_E_INPUT = 1,             /* unreadable or malformed graph input */
  WALKREF_E_INVALID_ARGUMENT = 2,  /* bad parameter, e.g. ell < 2 */
  WALKREF_E_DIMENSION = 3,         /* vertex count or feature size mismatch */
  WALKREF_E_NOT_STABLE = 4,        /* round budget exhausted */
  WALKREF_E_LIMIT = 5,             /* configured size cap refused the work */
  WALKREF_E_LABEL_DEPENDENCE = 6,
  WALKREF_E_INTERNAL = 7,          /* invariant breach inside the library */
  WALKREF_E_RESOURCE = 8           /* allocation failure */
} walkref_status;

typedef enum { WALKREF_PROC_WL2 = 0, WALKREF_PROC_WALK = 1 } walkref_proc;

WALKREF_API const char* walkref_version(void);

/* Message for the last failed call on this thread; "" if none. */
WALKREF_API const char* walkref_last_error(void);

WALKREF_API void walkref_string_free(char* s);

/* Graphs. JSON or graph6 is chosen by content for files. */
WALKREF_API walkref_status walkref_graph_load_file(const char* path, walkref_graph** out);
WALKREF_API walkref_status walkref_graph_from_json(const char* text, walkref_graph** out);
WALKREF_API walkref_status walkref_graph_from_graph6(const char* text, walkref_graph** out);
WALKREF_API walkref_status walkref_graph_named(const char* name, walkref_graph** out);
WALKREF_API walkref_status walkref_graph_random(size_t n, size_t alphabet_size, uint64_t seed,
                                                walkref_graph** out);
/* perm[v] is the new index of vertex v. */
WALKREF_API walkref_status walkref_graph_permuted(const walkref_graph* g, const size_t* perm, size_t len,
                                                  walkref_graph** out);
WALKREF_API void walkref_graph_free(walkref_graph* g);
WALKREF_API size_t walkref_graph_n(const walkref_graph* g);
WALKREF_API size_t walkref_graph_class_count(const walkref_graph* g);

/* Refinement. max_rounds == 0 selects n*n + 1. ell is ignored for WL2. */
WALKREF_API walkref_status walkref_refine(const walkref_graph* g, walkref_proc proc, int ell,
                                          size_t max_rounds, walkref_trace** out);
WALKREF_API void walkref_trace_free(walkref_trace* t);
WALKREF_API size_t walkref_trace_stable_round(const walkref_trace* t);
/* Rounds held by the trace: stable_round + 2. */
WALKREF_API size_t walkref_trace_length(const walkref_trace* t);
/* Class count after round t; rounds past the trace report the fixpoint. */
WALKREF_API size_t walkref_trace_class_count(const walkref_trace* t, size_t round);
WALKREF_API walkref_status walkref_trace_fingerprint(const walkref_trace* t, size_t round, char** out);
WALKREF_API walkref_status walkref_trace_jsonl(const walkref_trace* t, int include_matrix, char** out);
WALKREF_API walkref_status walkref_trace_report_json(const walkref_trace* t, char** out);

/* Reports, as JSON documents. */
WALKREF_API walkref_status walkref_compare(const walkref_graph* a, const walkref_graph* b, walkref_proc proc,
                                           int ell, size_t max_rounds, char** json_out, char** text_out);
WALKREF_API walkref_status walkref_mpnn_sim(const walkref_graph* g, int ell, size_t max_bits, char** json_out);
WALKREF_API walkref_status walkref_gnn_sim(const walkref_graph* g, char** json_out);

/* only: comma-separated suite names, or NULL / "" for all suites.
 * corpus_size == 0 selects the default of 100 random graphs. */
WALKREF_API walkref_status walkref_verify(uint64_t seed, const char* only, size_t corpus_size, char** json_out,
                                          int* all_passed);
/* Newline-separated suite names. */
WALKREF_API walkref_status walkref_verify_suites(char** out);

/* Exact s_t in decimal. */
WALKREF_API walkref_status walkref_feature_dim(size_t n, int ell, size_t s_prev, char** decimal_out);

/* Test hook: every walk step uses ell + offset. 0 restores normal behaviour. */
WALKREF_API void walkref_testing_set_walk_mutation(int offset);

#ifdef __cplusplus
}
#endif

#endif  /* WALKREF_WALKREF_H_ */
