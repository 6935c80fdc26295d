// Copyright 2026 The ccir Authors
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

#include "ccir/ccir.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "ccir/benchgen.hpp"
#include "ccir/corpus.hpp"
#include "ccir/error.hpp"
#include "ccir/evaluation.hpp"
#include "ccir/hierarchy.hpp"
#include "ccir/random.hpp"
#include "ccir/selection.hpp"
#include "text_io.hpp"

struct ccir_graph {
  ccir::CitationGraph rep;
};

struct ccir_cases {
  std::vector<ccir::RelevanceCase> rep;
};

struct ccir_tree {
  ccir::ClusterTree rep;
};

namespace {

thread_local std::string last_error;

ccir_status to_status(ccir::ErrorKind kind) {
  switch (kind) {
    case ccir::ErrorKind::InvalidArgument: return CCIR_ERR_INVALID_ARGUMENT;
    case ccir::ErrorKind::Io: return CCIR_ERR_IO;
    case ccir::ErrorKind::Parse: return CCIR_ERR_PARSE;
    case ccir::ErrorKind::Data: return CCIR_ERR_DATA;
  }
  return CCIR_ERR_INTERNAL;
}

template <typename Fn>
ccir_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return CCIR_OK;
  } catch (const ccir::Error& e) {
    last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CCIR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CCIR_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return CCIR_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (!p) throw ccir::Error(ccir::ErrorKind::InvalidArgument, std::string(name) + " must not be NULL");
}

void emit(ccir_log_fn log, void* user, const std::string& message) {
  if (log) log(user, message.c_str());
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ccir_version(void) { return "1.0.0"; }

const char* ccir_last_error(void) { return last_error.c_str(); }

void ccir_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------
// corpus

ccir_status ccir_graph_load(const char* documents_path, const char* edges_path, ccir_graph** out) {
  return guarded([&] {
    require(documents_path, "documents_path");
    require(edges_path, "edges_path");
    require(out, "out");
    *out = new ccir_graph{ccir::load_corpus_files(documents_path, edges_path)};
  });
}

ccir_status ccir_graph_save(const ccir_graph* graph, const char* documents_path, const char* edges_path) {
  return guarded([&] {
    require(graph, "graph");
    require(documents_path, "documents_path");
    require(edges_path, "edges_path");
    auto docs = ccir::detail::open_output(documents_path);
    ccir::write_documents(docs, graph->rep);
    ccir::detail::finish_output(docs, documents_path);
    auto edges = ccir::detail::open_output(edges_path);
    ccir::write_edges(edges, graph->rep);
    ccir::detail::finish_output(edges, edges_path);
  });
}

ccir_status ccir_graph_filter_years(const ccir_graph* graph, int min_year, int max_year, ccir_graph** out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    *out = new ccir_graph{ccir::filter_by_year(graph->rep, {min_year, max_year})};
  });
}

size_t ccir_graph_document_count(const ccir_graph* graph) { return graph ? graph->rep.document_count() : 0; }

size_t ccir_graph_edge_count(const ccir_graph* graph) { return graph ? graph->rep.edge_count() : 0; }

void ccir_graph_free(ccir_graph* graph) { delete graph; }

ccir_status ccir_year_window(int task_year, int span, int* min_year, int* max_year) {
  return guarded([&] {
    require(min_year, "min_year");
    require(max_year, "max_year");
    const auto w = ccir::year_window(task_year, span);
    *min_year = w.min_year;
    *max_year = w.max_year;
  });
}

// ---------------------------------------------------------------------------
// relevance cases

ccir_status ccir_cases_load(const char* path, ccir_cases** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new ccir_cases{ccir::load_cases(path)};
  });
}

size_t ccir_cases_count(const ccir_cases* cases) { return cases ? cases->rep.size() : 0; }

void ccir_cases_free(ccir_cases* cases) { delete cases; }

// ---------------------------------------------------------------------------
// cluster tree

void ccir_build_options_init(ccir_build_options* options) {
  if (!options) return;
  const ccir::TreeConfig defaults;
  options->base_resolution = defaults.schedule.base;
  options->factor = defaults.schedule.factor;
  options->max_depth = defaults.schedule.max_depth;
  options->max_children = defaults.max_children;
  options->seed = defaults.clustering.seed;
  options->max_sweeps = defaults.clustering.max_sweeps;
  options->expand_relevant_only = 0;
  options->jobs = 1;
  options->log = nullptr;
  options->log_user = nullptr;
}

ccir_status ccir_tree_build(const ccir_graph* graph, const ccir_build_options* options,
                            const ccir_cases* cases, ccir_tree** out) {
  return guarded([&] {
    require(graph, "graph");
    require(options, "options");
    require(out, "out");
    ccir::TreeConfig config;
    config.schedule = {options->base_resolution, options->factor, options->max_depth};
    config.max_children = options->max_children;
    config.clustering.seed = options->seed;
    config.clustering.max_sweeps = options->max_sweeps;
    config.jobs = options->jobs;

    ccir::ExpandPredicate expand = ccir::expand_all();
    if (options->expand_relevant_only) {
      if (!cases) {
        throw ccir::Error(ccir::ErrorKind::InvalidArgument, "relevant-only expansion needs relevance cases");
      }
      expand = ccir::expand_relevant_only(graph->rep, cases->rep);
    }
    auto tree = std::make_unique<ccir_tree>(ccir_tree{ccir::build_tree(graph->rep, config, expand)});
    for (const auto& w : tree->rep.warnings) emit(options->log, options->log_user, "warning: " + w);
    *out = tree.release();
  });
}

ccir_status ccir_tree_load(const char* path, ccir_tree** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new ccir_tree{ccir::load_tree(path)};
  });
}

ccir_status ccir_tree_save(const ccir_tree* tree, const char* path) {
  return guarded([&] {
    require(tree, "tree");
    require(path, "path");
    ccir::save_tree(path, tree->rep);
  });
}

size_t ccir_tree_node_count(const ccir_tree* tree) { return tree ? tree->rep.nodes().size() : 0; }

int ccir_tree_max_level(const ccir_tree* tree) { return tree ? tree->rep.max_level() : 0; }

size_t ccir_tree_level_count(const ccir_tree* tree, int level) {
  if (!tree || level < 0) return 0;
  const auto counts = tree->rep.level_counts();
  return static_cast<std::size_t>(level) < counts.size() ? counts[static_cast<std::size_t>(level)] : 0;
}

void ccir_tree_free(ccir_tree* tree) { delete tree; }

ccir_status ccir_resolution_at(double base, double factor, int max_depth, int level, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = ccir::resolution_at({base, factor, max_depth}, level);
  });
}

// ---------------------------------------------------------------------------
// simulation and evaluation

ccir_status ccir_f_beta(double precision, double recall, double beta, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = ccir::f_beta(precision, recall, beta);
  });
}

void ccir_simulate_options_init(ccir_simulate_options* options) {
  if (!options) return;
  options->betas = nullptr;
  options->beta_count = 0;
  options->jobs = 1;
  options->log = nullptr;
  options->log_user = nullptr;
}

ccir_status ccir_simulate(const ccir_tree* tree, const ccir_cases* cases,
                          const ccir_simulate_options* options, const char* csv_path,
                          const char* json_path, ccir_simulate_summary* summary) {
  return guarded([&] {
    require(tree, "tree");
    require(cases, "cases");
    require(options, "options");
    require(csv_path, "csv_path");
    ccir::BetaGrid grid;
    if (options->betas) grid.values.assign(options->betas, options->betas + options->beta_count);

    auto result = ccir::simulate(tree->rep, cases->rep, grid, options->jobs);
    for (const auto& w : result.warnings) emit(options->log, options->log_user, "warning: " + w);

    auto csv = ccir::detail::open_output(csv_path);
    ccir::write_outcomes_csv(csv, result.rows);
    ccir::detail::finish_output(csv, csv_path);

    if (json_path) {
      std::vector<ccir::BetaGroup> groups;
      if (!result.rows.empty()) groups = ccir::aggregate(result.rows);
      auto json = ccir::detail::open_output(json_path);
      ccir::write_summary_json(json, groups, result.rows.size(),
                               ccir::RunCounts{result.cases_total, result.filtered_out, result.skipped});
      ccir::detail::finish_output(json, json_path);
    }
    if (summary) {
      summary->cases_total = result.cases_total;
      summary->filtered_out = result.filtered_out;
      summary->skipped = result.skipped;
      summary->cases_evaluated = result.cases_total - result.filtered_out - result.skipped;
      summary->rows = result.rows.size();
    }
  });
}

ccir_status ccir_report(const char* csv_path, const char* json_path, char** out_text) {
  return guarded([&] {
    require(csv_path, "csv_path");
    require(out_text, "out_text");
    auto in = ccir::detail::open_input(csv_path);
    const auto rows = ccir::read_outcomes_csv(in);
    const auto groups = ccir::aggregate(rows);
    if (json_path) {
      auto json = ccir::detail::open_output(json_path);
      ccir::write_summary_json(json, groups, rows.size(), std::nullopt);
      ccir::detail::finish_output(json, json_path);
    }
    *out_text = copy_string(ccir::render_report(groups));
  });
}

// ---------------------------------------------------------------------------
// synthetic benchmark

void ccir_gen_options_init(ccir_gen_options* options) {
  if (!options) return;
  static const int kBlocks[] = {4, 3};
  static const double kProbs[] = {0.3, 0.05, 0.005};
  options->blocks_per_level = kBlocks;
  options->level_count = 2;
  options->docs_per_leaf = 20;
  options->edge_probs = kProbs;
  options->edge_prob_count = 3;
  options->min_year = 2005;
  options->max_year = 2015;
  options->seed = 0;
  options->case_count = 1;
  options->case_level = 0;
  options->noise_frac = 0.0;
  options->baseline_factor = 10.0;
}

ccir_status ccir_generate(const ccir_gen_options* options, const char* documents_path,
                          const char* edges_path, const char* cases_path, const char* labels_path) {
  return guarded([&] {
    require(options, "options");
    require(documents_path, "documents_path");
    require(edges_path, "edges_path");
    require(cases_path, "cases_path");
    if (options->level_count > 0) require(options->blocks_per_level, "blocks_per_level");
    if (options->edge_prob_count > 0) require(options->edge_probs, "edge_probs");

    ccir::PlantedSpec spec;
    spec.blocks_per_level.assign(options->blocks_per_level, options->blocks_per_level + options->level_count);
    spec.docs_per_leaf = options->docs_per_leaf;
    spec.edge_probs.assign(options->edge_probs, options->edge_probs + options->edge_prob_count);
    spec.year_range = {options->min_year, options->max_year};
    spec.seed = options->seed;
    const auto corpus = ccir::generate(spec);

    const int levels = static_cast<int>(spec.blocks_per_level.size());
    const int level = options->case_level == 0 ? levels : options->case_level;
    if (level < 1 || level > levels) {
      throw ccir::Error(ccir::ErrorKind::InvalidArgument, "case level out of range");
    }
    std::uint32_t blocks = 1;
    for (int l = 0; l < level; ++l) blocks *= static_cast<std::uint32_t>(spec.blocks_per_level[static_cast<std::size_t>(l)]);

    std::vector<ccir::RelevanceCase> cases;
    for (std::size_t i = 0; i < options->case_count; ++i) {
      ccir::SynthCaseOptions co;
      co.case_id = "case" + std::to_string(i + 1);
      co.task_year = spec.year_range.max_year + 1;
      co.baseline_factor = options->baseline_factor;
      cases.push_back(ccir::synth_case(corpus.graph, corpus.labels, level,
                                       static_cast<std::uint32_t>(i % blocks), options->noise_frac,
                                       ccir::derive_seed(spec.seed, "case:" + std::to_string(i)), co));
    }

    auto docs = ccir::detail::open_output(documents_path);
    ccir::write_documents(docs, corpus.graph);
    ccir::detail::finish_output(docs, documents_path);
    auto edges = ccir::detail::open_output(edges_path);
    ccir::write_edges(edges, corpus.graph);
    ccir::detail::finish_output(edges, edges_path);
    auto out_cases = ccir::detail::open_output(cases_path);
    ccir::write_cases(out_cases, cases);
    ccir::detail::finish_output(out_cases, cases_path);
    if (labels_path) {
      auto labels = ccir::detail::open_output(labels_path);
      for (ccir::DocIndex d = 0; d < corpus.graph.document_count(); ++d) {
        labels << corpus.graph.id(d);
        for (const auto& per_level : corpus.labels.per_level) labels << '\t' << per_level[d];
        labels << '\n';
      }
      ccir::detail::finish_output(labels, labels_path);
    }
  });
}

}  // extern "C"
