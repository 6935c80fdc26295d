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
#include <string>
#include <vector>

#include "ccir/corpus.hpp"
#include "ccir/selection.hpp"

namespace ccir {

// Nested stochastic block model. blocks_per_level lists the fan-out from the
// outermost level inwards ({4, 3}: 4 blocks, each split into 3 leaves).
// edge_probs is innermost first: same leaf, then sharing one level less, ...,
// then no shared block. The last entry may be omitted when there is a single
// top-level block.
struct PlantedSpec {
  std::vector<int> blocks_per_level{4, 3};
  int docs_per_leaf = 20;
  std::vector<double> edge_probs{0.3, 0.05, 0.005};
  YearWindow year_range{2005, 2015};
  std::uint64_t seed = 0;

  void validate() const;
  std::size_t document_count() const;
};

// per_level[l][d] is the block of document d at tree level l + 1, outermost
// level first. Block numbers are global within a level.
struct PlantedLabels {
  std::vector<std::vector<std::uint32_t>> per_level;
};

struct PlantedCorpus {
  CitationGraph graph;
  PlantedLabels labels;
};

PlantedCorpus generate(const PlantedSpec& spec);

struct SynthCaseOptions {
  std::string case_id = "case1";
  int task_year = 0;
  // Baseline size as a multiple of the relevant set size, capped at the
  // corpus size.
  double baseline_factor = 10.0;
};

// Relevance case whose relevant set is a planted block (level is 1-based)
// with floor(noise_frac * n) members swapped for outside documents.
RelevanceCase synth_case(const CitationGraph& graph, const PlantedLabels& labels, int level,
                         std::uint32_t block, double noise_frac, std::uint64_t seed,
                         const SynthCaseOptions& options = {});

}  // namespace ccir
