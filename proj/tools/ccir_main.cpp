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

// Command-line front end: gen -> build -> simulate -> report. Everything goes
// through the C API in ccir/ccir.h.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccir/ccir.h"

namespace {

constexpr int kExitFailure = 2;

struct RunConfig {
  // paths
  std::string documents;
  std::string edges;
  std::string cases;
  std::string tree;
  std::string csv;
  std::string json;
  std::string labels;

  // tree construction
  double base_resolution = 2e-5;
  double factor = 3.0;
  int max_depth = 13;
  std::size_t max_children = 10;
  int max_sweeps = 100;
  std::string expand = "all";
  int task_year = 0;
  int span = 11;

  // simulation
  std::vector<double> betas;

  // generator
  std::vector<int> blocks{4, 3};
  int docs_per_leaf = 20;
  std::vector<double> probs{0.3, 0.05, 0.005};
  int min_year = 2005;
  int max_year = 2015;
  std::size_t case_count = 1;
  int case_level = 0;
  double noise = 0.0;
  double baseline_factor = 10.0;

  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

class Failure {
 public:
  explicit Failure(std::string message) : message_(std::move(message)) {}
  const std::string& message() const { return message_; }

 private:
  std::string message_;
};

void check(ccir_status status) {
  if (status != CCIR_OK) throw Failure(ccir_last_error());
}

void require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw Failure(std::string("missing required option ") + flag);
}

void require_input(const std::string& path, const char* flag) {
  require_path(path, flag);
  if (!std::filesystem::exists(path)) throw Failure("input file not found: '" + path + "'");
}

void log_to_stderr(void*, const char* message) { std::fprintf(stderr, "%s\n", message); }

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
};

using GraphHandle = Handle<ccir_graph, ccir_graph_free>;
using CasesHandle = Handle<ccir_cases, ccir_cases_free>;
using TreeHandle = Handle<ccir_tree, ccir_tree_free>;

void cmd_gen(const RunConfig& cfg) {
  require_path(cfg.documents, "--documents");
  require_path(cfg.edges, "--edges");
  require_path(cfg.cases, "--cases");
  ccir_gen_options options;
  ccir_gen_options_init(&options);
  options.blocks_per_level = cfg.blocks.data();
  options.level_count = cfg.blocks.size();
  options.docs_per_leaf = cfg.docs_per_leaf;
  options.edge_probs = cfg.probs.data();
  options.edge_prob_count = cfg.probs.size();
  options.min_year = cfg.min_year;
  options.max_year = cfg.max_year;
  options.seed = cfg.seed;
  options.case_count = cfg.case_count;
  options.case_level = cfg.case_level;
  options.noise_frac = cfg.noise;
  options.baseline_factor = cfg.baseline_factor;
  check(ccir_generate(&options, cfg.documents.c_str(), cfg.edges.c_str(), cfg.cases.c_str(),
                      cfg.labels.empty() ? nullptr : cfg.labels.c_str()));
  std::fprintf(stderr, "wrote %s, %s, %s\n", cfg.documents.c_str(), cfg.edges.c_str(), cfg.cases.c_str());
}

void cmd_build(const RunConfig& cfg) {
  require_input(cfg.documents, "--documents");
  require_input(cfg.edges, "--edges");
  require_path(cfg.tree, "--tree");
  const bool relevant_only = cfg.expand == "relevant-only";
  if (relevant_only) require_input(cfg.cases, "--cases");

  GraphHandle graph;
  check(ccir_graph_load(cfg.documents.c_str(), cfg.edges.c_str(), &graph.ptr));
  if (cfg.task_year != 0) {
    int min_year = 0;
    int max_year = 0;
    check(ccir_year_window(cfg.task_year, cfg.span, &min_year, &max_year));
    GraphHandle filtered;
    check(ccir_graph_filter_years(graph.ptr, min_year, max_year, &filtered.ptr));
    std::swap(graph.ptr, filtered.ptr);
    std::fprintf(stderr, "year window %d-%d\n", min_year, max_year);
  }
  std::fprintf(stderr, "corpus: %zu documents, %zu citation links\n",
               ccir_graph_document_count(graph.ptr), ccir_graph_edge_count(graph.ptr));

  CasesHandle cases;
  if (relevant_only) check(ccir_cases_load(cfg.cases.c_str(), &cases.ptr));

  ccir_build_options options;
  ccir_build_options_init(&options);
  options.base_resolution = cfg.base_resolution;
  options.factor = cfg.factor;
  options.max_depth = cfg.max_depth;
  options.max_children = cfg.max_children;
  options.seed = cfg.seed;
  options.max_sweeps = cfg.max_sweeps;
  options.expand_relevant_only = relevant_only ? 1 : 0;
  options.jobs = cfg.jobs;
  options.log = log_to_stderr;

  TreeHandle tree;
  check(ccir_tree_build(graph.ptr, &options, cases.ptr, &tree.ptr));
  for (int level = 1; level <= ccir_tree_max_level(tree.ptr); ++level) {
    double r = 0.0;
    check(ccir_resolution_at(cfg.base_resolution, cfg.factor, cfg.max_depth, level, &r));
    std::fprintf(stderr, "level %2d: %zu clusters (resolution %.6g)\n", level,
                 ccir_tree_level_count(tree.ptr, level), r);
  }
  check(ccir_tree_save(tree.ptr, cfg.tree.c_str()));
  std::fprintf(stderr, "wrote %s (%zu nodes)\n", cfg.tree.c_str(), ccir_tree_node_count(tree.ptr));
}

void cmd_simulate(const RunConfig& cfg) {
  require_input(cfg.tree, "--tree");
  require_input(cfg.cases, "--cases");
  require_path(cfg.csv, "--csv");

  TreeHandle tree;
  check(ccir_tree_load(cfg.tree.c_str(), &tree.ptr));
  CasesHandle cases;
  check(ccir_cases_load(cfg.cases.c_str(), &cases.ptr));

  ccir_simulate_options options;
  ccir_simulate_options_init(&options);
  if (!cfg.betas.empty()) {
    options.betas = cfg.betas.data();
    options.beta_count = cfg.betas.size();
  }
  options.jobs = cfg.jobs;
  options.log = log_to_stderr;
  ccir_simulate_summary summary{};
  check(ccir_simulate(tree.ptr, cases.ptr, &options, cfg.csv.c_str(),
                      cfg.json.empty() ? nullptr : cfg.json.c_str(), &summary));
  std::fprintf(stderr, "cases: %zu total, %zu evaluated, %zu filtered out, %zu skipped; %zu rows\n",
               summary.cases_total, summary.cases_evaluated, summary.filtered_out, summary.skipped,
               summary.rows);
}

void cmd_report(const RunConfig& cfg) {
  require_input(cfg.csv, "--csv");
  char* text = nullptr;
  check(ccir_report(cfg.csv.c_str(), cfg.json.empty() ? nullptr : cfg.json.c_str(), &text));
  std::fputs(text, stdout);
  ccir_string_free(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Citation cluster-based retrieval simulator", "ccir"};
  app.set_config("--config", "", "Configuration file (TOML/INI); command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--documents", cfg.documents, "Documents file (<id><TAB><year>)");
  app.add_option("--edges", cfg.edges, "Citation edges file (<id><TAB><id>)");
  app.add_option("--cases", cfg.cases, "Relevance cases file");
  app.add_option("--tree", cfg.tree, "Cluster tree file");
  app.add_option("--csv", cfg.csv, "Outcomes CSV");
  app.add_option("--json", cfg.json, "Per-beta summary JSON");
  app.add_option("--labels", cfg.labels, "Planted labels output (gen)");

  app.add_option("--seed", cfg.seed, "Top-level random seed");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-children", cfg.max_children, "Maximum clusters per node");
  app.add_option("--max-depth", cfg.max_depth, "Tree depth below the root");
  app.add_option("--base-resolution", cfg.base_resolution, "Resolution at level 1");
  app.add_option("--factor", cfg.factor, "Resolution multiplier per level");
  app.add_option("--max-sweeps", cfg.max_sweeps, "Iteration cap for clustering");
  app.add_option("--expand", cfg.expand, "Expansion policy")
      ->check(CLI::IsMember({"all", "relevant-only"}));
  app.add_option("--task-year", cfg.task_year, "Restrict the corpus to the window before this year");
  app.add_option("--span", cfg.span, "Window length in years");
  app.add_option("--betas", cfg.betas, "Comma-separated beta grid")->delimiter(',');

  app.add_option("--blocks", cfg.blocks, "Planted blocks per level, outermost first")->delimiter(',');
  app.add_option("--docs-per-leaf", cfg.docs_per_leaf, "Documents per planted leaf block");
  app.add_option("--probs", cfg.probs, "Edge probabilities, innermost first")->delimiter(',');
  app.add_option("--min-year", cfg.min_year, "First publication year");
  app.add_option("--max-year", cfg.max_year, "Last publication year");
  app.add_option("--case-count", cfg.case_count, "Number of synthetic cases");
  app.add_option("--case-level", cfg.case_level, "Planted level targeted by cases (0 = deepest)");
  app.add_option("--noise", cfg.noise, "Fraction of relevant documents swapped out");
  app.add_option("--baseline-factor", cfg.baseline_factor, "Baseline size relative to the relevant set");

  auto* gen = app.add_subcommand("gen", "Generate a synthetic planted corpus and cases");
  auto* build = app.add_subcommand("build", "Build the cluster tree");
  auto* simulate = app.add_subcommand("simulate", "Run the greedy selection over the beta grid");
  auto* report = app.add_subcommand("report", "Summarise an outcomes CSV");
  for (auto* sub : {gen, build, simulate, report}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) cmd_gen(cfg);
    if (build->parsed()) cmd_build(cfg);
    if (simulate->parsed()) cmd_simulate(cfg);
    if (report->parsed()) cmd_report(cfg);
  } catch (const Failure& f) {
    std::fprintf(stderr, "ccir: error: %s\n", f.message().c_str());
    return kExitFailure;
  }
  return 0;
}
