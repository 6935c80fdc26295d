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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccir/hierarchy.hpp"
#include "ccir/selection.hpp"

namespace ccir {

struct SetComparison {
  std::size_t intersection = 0;
  double intersection_ccir = 0.0;      // |C ∩ B| / |C|
  double intersection_baseline = 0.0;  // |C ∩ B| / |B|
  double size_ratio = 0.0;             // |C| / |B|
};

SetComparison compare_counts(std::size_t ccir_size, std::size_t baseline_size, std::size_t intersection);
// Both id lists sorted ascending and non-empty.
SetComparison compare_sets(std::span<const std::string> ccir_set, std::span<const std::string> baseline_set);

double f_score_difference(double ccir_f, double baseline_f);

struct BaselineScores {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

// Recall is 1 by the subset invariant of RelevanceCase.
BaselineScores baseline_prf(const RelevanceCase& c, double beta);

// Inclusion rule for a case: at least 10 relevant documents and a
// self-reported retrieval count within a factor of 10 of our baseline size.
bool case_filter(const RelevanceCase& c, std::size_t our_baseline_size);

struct ComparisonMetrics {
  double intersection_ccir = 0.0;
  double intersection_baseline = 0.0;
  double size_ratio = 0.0;
  double f_score_difference = 0.0;
  double baseline_precision = 0.0;
  double baseline_recall = 0.0;
  double baseline_f = 0.0;
};

struct EvaluationRow {
  SelectionOutcome outcome;
  ComparisonMetrics metrics;
};

EvaluationRow evaluate_outcome(const ClusterTree& tree, const RelevanceCase& c,
                               const SelectionOutcome& outcome);

struct SimulationResult {
  std::vector<EvaluationRow> rows;  // case order, then grid order
  std::size_t cases_total = 0;
  std::size_t filtered_out = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Filters cases, runs the beta grid for each remaining case and computes the
// comparison metrics. Cases whose relevant documents are missing from the
// tree are skipped with a warning.
SimulationResult simulate(const ClusterTree& tree, std::span<const RelevanceCase> cases,
                          const BetaGrid& grid, unsigned jobs = 1);

// Five-number summary. Quartiles are medians of the lower and upper halves,
// each half including the median when the count is odd.
struct Dispersion {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;

  double iqr() const { return q3 - q1; }
};

Dispersion describe(std::vector<double> values);

// Metric columns aggregated per beta, in CSV column order.
const std::vector<std::string>& metric_names();
double metric_value(const EvaluationRow& row, std::string_view metric);

struct BetaGroup {
  double beta = 0.0;
  std::vector<EvaluationRow> rows;  // sorted by case id
  std::vector<std::pair<std::string, Dispersion>> metrics;
};

std::vector<BetaGroup> aggregate(std::span<const EvaluationRow> rows);

struct RunCounts {
  std::size_t cases_total = 0;
  std::size_t filtered_out = 0;
  std::size_t skipped = 0;
};

void write_outcomes_csv(std::ostream& out, std::span<const EvaluationRow> rows);
std::vector<EvaluationRow> read_outcomes_csv(std::istream& in);

void write_summary_json(std::ostream& out, std::span<const BetaGroup> groups,
                        std::size_t row_count, const std::optional<RunCounts>& counts);

// Human-readable per-beta table, values rounded to two decimals.
std::string render_report(std::span<const BetaGroup> groups);

}  // namespace ccir
