/* Copyright 2026 The ccir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CCIR_CCIR_H
#define CCIR_CCIR_H

/* C interface to the citation cluster retrieval toolkit. All handles are
 * opaque and owned by the caller once returned; release them with the
 * matching *_free function. Functions returning ccir_status leave a message
 * retrievable with ccir_last_error() on failure (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CCIR_BUILDING_LIBRARY)
#    define CCIR_API __declspec(dllexport)
#  else
#    define CCIR_API __declspec(dllimport)
#  endif
#else
#  define CCIR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccir_status {
  CCIR_OK = 0,
  CCIR_ERR_INVALID_ARGUMENT = 1,
  CCIR_ERR_IO = 2,
  CCIR_ERR_PARSE = 3,
  CCIR_ERR_DATA = 4,
  CCIR_ERR_INTERNAL = 5
} ccir_status;

typedef struct ccir_graph ccir_graph;
typedef struct ccir_cases ccir_cases;
typedef struct ccir_tree ccir_tree;

/* Receives warnings and progress messages. */
typedef void (*ccir_log_fn)(void* user, const char* message);

CCIR_API const char* ccir_version(void);
CCIR_API const char* ccir_last_error(void);
CCIR_API void ccir_string_free(char* s);

/* ---- corpus ---------------------------------------------------------- */

CCIR_API ccir_status ccir_graph_load(const char* documents_path, const char* edges_path,
                                     ccir_graph** out);
CCIR_API ccir_status ccir_graph_save(const ccir_graph* graph, const char* documents_path,
                                     const char* edges_path);
CCIR_API ccir_status ccir_graph_filter_years(const ccir_graph* graph, int min_year, int max_year,
                                             ccir_graph** out);
CCIR_API size_t ccir_graph_document_count(const ccir_graph* graph);
CCIR_API size_t ccir_graph_edge_count(const ccir_graph* graph);
CCIR_API void ccir_graph_free(ccir_graph* graph);

/* Window of `span` years ending the year before task_year, inclusive. */
CCIR_API ccir_status ccir_year_window(int task_year, int span, int* min_year, int* max_year);

/* ---- relevance cases ------------------------------------------------- */

CCIR_API ccir_status ccir_cases_load(const char* path, ccir_cases** out);
CCIR_API size_t ccir_cases_count(const ccir_cases* cases);
CCIR_API void ccir_cases_free(ccir_cases* cases);

/* ---- cluster tree ---------------------------------------------------- */

typedef struct ccir_build_options {
  double base_resolution; /* resolution at level 1 */
  double factor;          /* per-level multiplier */
  int max_depth;
  size_t max_children;
  uint64_t seed;
  int max_sweeps;
  int expand_relevant_only; /* nonzero: expand only nodes with relevant docs */
  unsigned jobs;
  ccir_log_fn log;
  void* log_user;
} ccir_build_options;

CCIR_API void ccir_build_options_init(ccir_build_options* options);

/* `cases` may be NULL unless expand_relevant_only is set. */
CCIR_API ccir_status ccir_tree_build(const ccir_graph* graph, const ccir_build_options* options,
                                     const ccir_cases* cases, ccir_tree** out);
CCIR_API ccir_status ccir_tree_load(const char* path, ccir_tree** out);
CCIR_API ccir_status ccir_tree_save(const ccir_tree* tree, const char* path);
CCIR_API size_t ccir_tree_node_count(const ccir_tree* tree);
CCIR_API int ccir_tree_max_level(const ccir_tree* tree);
CCIR_API size_t ccir_tree_level_count(const ccir_tree* tree, int level);
CCIR_API void ccir_tree_free(ccir_tree* tree);

CCIR_API ccir_status ccir_resolution_at(double base, double factor, int max_depth, int level,
                                        double* out);

/* ---- simulation and evaluation -------------------------------------- */

CCIR_API ccir_status ccir_f_beta(double precision, double recall, double beta, double* out);

typedef struct ccir_simulate_options {
  const double* betas; /* NULL selects the default 11-value grid */
  size_t beta_count;
  unsigned jobs;
  ccir_log_fn log;
  void* log_user;
} ccir_simulate_options;

typedef struct ccir_simulate_summary {
  size_t cases_total;
  size_t filtered_out;
  size_t skipped;
  size_t cases_evaluated;
  size_t rows;
} ccir_simulate_summary;

CCIR_API void ccir_simulate_options_init(ccir_simulate_options* options);

/* Writes the outcomes CSV and, when json_path is not NULL, the per-beta
 * summary. `summary` may be NULL. */
CCIR_API ccir_status ccir_simulate(const ccir_tree* tree, const ccir_cases* cases,
                                   const ccir_simulate_options* options, const char* csv_path,
                                   const char* json_path, ccir_simulate_summary* summary);

/* Aggregates an outcomes CSV. The rounded text report is returned in
 * *out_text (free with ccir_string_free); json_path may be NULL. */
CCIR_API ccir_status ccir_report(const char* csv_path, const char* json_path, char** out_text);

/* ---- synthetic benchmark -------------------------------------------- */

typedef struct ccir_gen_options {
  const int* blocks_per_level;
  size_t level_count;
  int docs_per_leaf;
  const double* edge_probs; /* innermost first */
  size_t edge_prob_count;
  int min_year;
  int max_year;
  uint64_t seed;
  size_t case_count;
  int case_level; /* 1-based planted level the cases target; 0 = deepest */
  double noise_frac;
  double baseline_factor;
} ccir_gen_options;

CCIR_API void ccir_gen_options_init(ccir_gen_options* options);

/* Writes documents, edges and cases files; labels_path may be NULL. */
CCIR_API ccir_status ccir_generate(const ccir_gen_options* options, const char* documents_path,
                                   const char* edges_path, const char* cases_path,
                                   const char* labels_path);

#ifdef __cplusplus
}
#endif

#endif /* CCIR_CCIR_H */
