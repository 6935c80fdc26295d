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

#include "ccir/benchgen.hpp"

#include <algorithm>
#include <cmath>

#include "ccir/error.hpp"
#include "ccir/random.hpp"

namespace ccir {

void PlantedSpec::validate() const {
  if (blocks_per_level.empty()) throw Error(ErrorKind::InvalidArgument, "blocks_per_level is empty");
  for (int b : blocks_per_level) {
    if (b < 1) throw Error(ErrorKind::InvalidArgument, "block counts must be >= 1");
  }
  if (docs_per_leaf < 1) throw Error(ErrorKind::InvalidArgument, "docs_per_leaf must be >= 1");
  const auto levels = blocks_per_level.size();
  const bool single_top = blocks_per_level.front() == 1;
  if (!(edge_probs.size() == levels + 1 || (single_top && edge_probs.size() == levels))) {
    throw Error(ErrorKind::InvalidArgument,
                "edge_probs needs one probability per level plus one for unrelated documents");
  }
  for (std::size_t i = 0; i < edge_probs.size(); ++i) {
    if (!(edge_probs[i] >= 0.0 && edge_probs[i] <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "edge probabilities must lie in [0, 1]");
    }
    if (i > 0 && !(edge_probs[i] < edge_probs[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "edge probabilities must decrease outwards");
    }
  }
  if (year_range.min_year > year_range.max_year) {
    throw Error(ErrorKind::InvalidArgument, "year range is empty");
  }
}

std::size_t PlantedSpec::document_count() const {
  std::size_t n = static_cast<std::size_t>(docs_per_leaf);
  for (int b : blocks_per_level) n *= static_cast<std::size_t>(b);
  return n;
}

PlantedCorpus generate(const PlantedSpec& spec) {
  spec.validate();
  const std::size_t n = spec.document_count();
  const std::size_t levels = spec.blocks_per_level.size();

  PlantedLabels labels;
  labels.per_level.assign(levels, std::vector<std::uint32_t>(n));
  for (std::size_t l = 0; l < levels; ++l) {
    // Documents per block at level l.
    std::size_t span = static_cast<std::size_t>(spec.docs_per_leaf);
    for (std::size_t k = l + 1; k < levels; ++k) span *= static_cast<std::size_t>(spec.blocks_per_level[k]);
    for (std::size_t d = 0; d < n; ++d) labels.per_level[l][d] = static_cast<std::uint32_t>(d / span);
  }

  std::size_t width = 1;
  for (std::size_t v = n > 0 ? n - 1 : 0; v >= 10; v /= 10) ++width;
  std::vector<Document> docs(n);
  Rng years(derive_seed(spec.seed, "benchgen.years"));
  const auto year_span = static_cast<std::uint64_t>(spec.year_range.max_year - spec.year_range.min_year + 1);
  for (std::size_t d = 0; d < n; ++d) {
    std::string digits = std::to_string(d);
    docs[d].id = "d" + std::string(width - digits.size(), '0') + digits;
    docs[d].year = spec.year_range.min_year + static_cast<int>(uniform_below(years, year_span));
  }

  std::vector<std::pair<std::string, std::string>> edges;
  Rng rng(derive_seed(spec.seed, "benchgen.edges"));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t shared = 0;
      while (shared < levels && labels.per_level[shared][i] == labels.per_level[shared][j]) ++shared;
      const std::size_t tier = levels - shared;
      const double p = tier < spec.edge_probs.size() ? spec.edge_probs[tier] : 0.0;
      if (uniform_unit(rng) < p) edges.emplace_back(docs[i].id, docs[j].id);
    }
  }

  PlantedCorpus out;
  out.graph = CitationGraph::from_records(std::move(docs), edges);
  out.labels = std::move(labels);
  return out;
}

RelevanceCase synth_case(const CitationGraph& graph, const PlantedLabels& labels, int level,
                         std::uint32_t block, double noise_frac, std::uint64_t seed,
                         const SynthCaseOptions& options) {
  if (level < 1 || static_cast<std::size_t>(level) > labels.per_level.size()) {
    throw Error(ErrorKind::InvalidArgument, "planted level out of range");
  }
  if (!(noise_frac >= 0.0 && noise_frac < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "noise fraction must lie in [0, 1)");
  }
  if (!(options.baseline_factor >= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "baseline factor must be >= 1");
  }
  const auto& label = labels.per_level[static_cast<std::size_t>(level - 1)];
  if (label.size() != graph.document_count()) {
    throw Error(ErrorKind::InvalidArgument, "labels do not match the graph");
  }

  std::vector<DocIndex> inside;
  std::vector<DocIndex> outside;
  for (DocIndex d = 0; d < label.size(); ++d) (label[d] == block ? inside : outside).push_back(d);
  if (inside.empty()) throw Error(ErrorKind::InvalidArgument, "planted block does not exist");

  Rng rng(derive_seed(seed, "benchgen.case"));
  const auto swaps = static_cast<std::size_t>(std::floor(noise_frac * static_cast<double>(inside.size())));
  if (swaps > outside.size()) throw Error(ErrorKind::InvalidArgument, "not enough outside documents for noise");
  shuffle(inside.begin(), inside.end(), rng);
  shuffle(outside.begin(), outside.end(), rng);
  std::vector<DocIndex> relevant(inside.begin() + static_cast<std::ptrdiff_t>(swaps), inside.end());
  relevant.insert(relevant.end(), outside.begin(), outside.begin() + static_cast<std::ptrdiff_t>(swaps));
  std::sort(relevant.begin(), relevant.end());

  std::vector<DocIndex> rest;
  for (DocIndex d = 0; d < graph.document_count(); ++d) {
    if (!std::binary_search(relevant.begin(), relevant.end(), d)) rest.push_back(d);
  }
  shuffle(rest.begin(), rest.end(), rng);
  const auto target = std::min<std::size_t>(
      graph.document_count(),
      static_cast<std::size_t>(std::llround(options.baseline_factor * static_cast<double>(relevant.size()))));
  std::vector<DocIndex> baseline = relevant;
  baseline.insert(baseline.end(), rest.begin(),
                  rest.begin() + static_cast<std::ptrdiff_t>(target - relevant.size()));

  RelevanceCase c;
  c.case_id = options.case_id;
  c.task_year = options.task_year;
  for (auto d : relevant) c.relevant.push_back(graph.id(d));
  for (auto d : baseline) c.baseline_retrieved.push_back(graph.id(d));
  c.self_reported_count = baseline.size();
  c.normalize();
  return c;
}

}  // namespace ccir
