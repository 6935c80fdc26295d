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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ccir/ccir.h"
#include "doctest.h"
#include "support/tempdir.hpp"

namespace {


void logger(void* user, const char* msg) { static_cast<std::string*>(user)->append(msg).append("\n"); }

}  // namespace

TEST_SUITE("c_api") {

TEST_CASE("version and error strings") {
  CHECK(std::string(ccir_version()) == "1.0.0");
  ccir_graph* g = nullptr;
  CHECK(ccir_graph_load("/nonexistent/docs.tsv", "/nonexistent/edges.tsv", &g) == CCIR_ERR_IO);
  CHECK(g == nullptr);
  CHECK(std::string(ccir_last_error()).find("/nonexistent/docs.tsv") != std::string::npos);
  CHECK(ccir_graph_load(nullptr, nullptr, &g) == CCIR_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scalar helpers") {
  double r = 0;
  REQUIRE(ccir_resolution_at(2e-5, 3, 13, 1, &r) == CCIR_OK);
  CHECK(r == 2e-5);
  CHECK(ccir_resolution_at(2e-5, 3, 13, 14, &r) == CCIR_ERR_INVALID_ARGUMENT);
  double f = 0;
  REQUIRE(ccir_f_beta(0.5, 0.5, 1, &f) == CCIR_OK);
  CHECK(f == doctest::Approx(0.5));
  CHECK(ccir_f_beta(0.5, 0.5, 0, &f) == CCIR_ERR_INVALID_ARGUMENT);
  int lo = 0, hi = 0;
  REQUIRE(ccir_year_window(2014, 11, &lo, &hi) == CCIR_OK);
  CHECK(lo == 2003);
  CHECK(hi == 2013);
}

TEST_CASE("generate, build, simulate and report") {
  ccir::testing::TempDir dir;
  const auto docs = dir.file("docs.tsv"), edges = dir.file("edges.tsv"), cases = dir.file("cases.txt");
  ccir_gen_options gen;
  ccir_gen_options_init(&gen);
  gen.seed = 11;
  REQUIRE(ccir_generate(&gen, docs.c_str(), edges.c_str(), cases.c_str(), nullptr) == CCIR_OK);

  ccir_graph* graph = nullptr;
  REQUIRE(ccir_graph_load(docs.c_str(), edges.c_str(), &graph) == CCIR_OK);
  CHECK(ccir_graph_document_count(graph) == 240);
  CHECK(ccir_graph_edge_count(graph) > 0);

  ccir_graph* window = nullptr;
  REQUIRE(ccir_graph_filter_years(graph, 2005, 2010, &window) == CCIR_OK);
  CHECK(ccir_graph_document_count(window) < 240);
  ccir_graph_free(window);

  ccir_cases* cs = nullptr;
  REQUIRE(ccir_cases_load(cases.c_str(), &cs) == CCIR_OK);
  CHECK(ccir_cases_count(cs) == 1);

  ccir_build_options opts;
  ccir_build_options_init(&opts);
  opts.base_resolution = 0.015;
  opts.factor = 6;
  opts.max_depth = 3;
  std::string log;
  opts.log = logger;
  opts.log_user = &log;
  ccir_tree* tree = nullptr;
  REQUIRE(ccir_tree_build(graph, &opts, nullptr, &tree) == CCIR_OK);
  CHECK(ccir_tree_max_level(tree) <= 3);
  CHECK(ccir_tree_level_count(tree, 0) == 1);
  CHECK(ccir_tree_level_count(tree, 1) <= 10);
  std::istringstream lines(log);
  for (std::string line; std::getline(lines, line);) CHECK(line.rfind("warning: ", 0) == 0);

  const auto tree_path = dir.file("tree.tsv");
  REQUIRE(ccir_tree_save(tree, tree_path.c_str()) == CCIR_OK);
  ccir_tree* loaded = nullptr;
  REQUIRE(ccir_tree_load(tree_path.c_str(), &loaded) == CCIR_OK);
  CHECK(ccir_tree_node_count(loaded) == ccir_tree_node_count(tree));

  ccir_simulate_options sim;
  ccir_simulate_options_init(&sim);
  ccir_simulate_summary summary{};
  const auto csv = dir.file("out.csv"), json = dir.file("summary.json");
  REQUIRE(ccir_simulate(loaded, cs, &sim, csv.c_str(), json.c_str(), &summary) == CCIR_OK);
  CHECK(summary.cases_total == 1);
  CHECK(summary.cases_evaluated == 1);
  CHECK(summary.rows == 11);

  char* text = nullptr;
  REQUIRE(ccir_report(csv.c_str(), nullptr, &text) == CCIR_OK);
  CHECK(std::string(text).find("beta") != std::string::npos);
  ccir_string_free(text);

  ccir_build_options relevant_only = opts;
  relevant_only.expand_relevant_only = 1;
  ccir_tree* partial = nullptr;
  CHECK(ccir_tree_build(graph, &relevant_only, nullptr, &partial) == CCIR_ERR_INVALID_ARGUMENT);
  REQUIRE(ccir_tree_build(graph, &relevant_only, cs, &partial) == CCIR_OK);
  CHECK(ccir_tree_node_count(partial) <= ccir_tree_node_count(tree));
  ccir_tree_free(partial);

  ccir_tree_free(loaded);
  ccir_tree_free(tree);
  ccir_cases_free(cs);
  ccir_graph_free(graph);
}

TEST_CASE("bad input maps to status codes") {
  ccir::testing::TempDir dir;
  const auto docs = dir.file("docs.tsv"), edges = dir.file("edges.tsv");
  std::ofstream(docs) << "A\t2010\n";
  std::ofstream(edges) << "A\tZ\n";
  ccir_graph* g = nullptr;
  CHECK(ccir_graph_load(docs.c_str(), edges.c_str(), &g) == CCIR_ERR_DATA);
  CHECK(std::string(ccir_last_error()).find("edge endpoint not among documents") != std::string::npos);
  std::ofstream(docs) << "A\tyear\n";
  CHECK(ccir_graph_load(docs.c_str(), edges.c_str(), &g) == CCIR_ERR_PARSE);
  ccir_gen_options gen;
  ccir_gen_options_init(&gen);
  gen.docs_per_leaf = 0;
  CHECK(ccir_generate(&gen, docs.c_str(), edges.c_str(), dir.file("c").c_str(), nullptr) ==
        CCIR_ERR_INVALID_ARGUMENT);
}

}
