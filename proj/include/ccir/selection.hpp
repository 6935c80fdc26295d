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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ccir/corpus.hpp"
#include "ccir/hierarchy.hpp"

namespace ccir {

// One retrieval task: the relevant documents (ground truth) and the documents
// returned by the baseline query, which must contain every relevant one.
struct RelevanceCase {
  std::string case_id;
  std::vector<std::string> relevant;            // sorted, unique
  std::vector<std::string> baseline_retrieved;  // sorted, unique
  int task_year = 0;
  std::uint64_t self_reported_count = 0;

  // Sorts and deduplicates the id lists, then checks the invariants.
  void normalize();
  void validate() const;
};

// Record blocks: "case <id> <task_year> <self_reported_count>", then
// "relevant: <ids>", then "baseline: <ids>".
std::vector<RelevanceCase> read_cases(std::istream& in);
std::vector<RelevanceCase> load_cases(const std::string& path);
void write_cases(std::ostream& out, std::span<const RelevanceCase> cases);

ExpandPredicate expand_relevant_only(const CitationGraph& graph, std::span<const RelevanceCase> cases);

struct BetaGrid {
  std::vector<double> values{0.125, 0.25, 0.5, 1, 2, 4, 8, 16, 32, 64, 128};

  void validate() const;
};

struct SelectionOutcome {
  std::string case_id;
  double beta = 0.0;
  std::string node_id;
  int level = 0;
  std::size_t retrieved_count = 0;
  std::size_t relevant_retrieved_count = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

// Weighted harmonic mean of precision and recall; 0 when both are 0.
double f_beta(double precision, double recall, double beta);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

// A case's relevant set expressed in a tree's document indices.
struct ResolvedCase {
  std::string case_id;
  std::vector<DocIndex> relevant;  // sorted
};

// Throws ccir::Error if a relevant document is not in the tree.
ResolvedCase resolve_case(const ClusterTree& tree, const RelevanceCase& c);

std::size_t relevant_in(const ClusterNode& node, const ResolvedCase& c);
PrecisionRecall cluster_prf(const ClusterNode& node, const ResolvedCase& c);

// Greedy descent from the root: move to the best-scoring child while it
// scores strictly higher than the current node. Ties between children go to
// the first in canonical order.
SelectionOutcome greedy_select(const ClusterTree& tree, const ResolvedCase& c, double beta);
SelectionOutcome greedy_select(const ClusterTree& tree, const RelevanceCase& c, double beta);

std::vector<SelectionOutcome> run_grid(const ClusterTree& tree, const RelevanceCase& c,
                                       const BetaGrid& grid);

}  // namespace ccir
