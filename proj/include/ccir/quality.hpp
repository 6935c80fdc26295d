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

#include "ccir/corpus.hpp"
#include "ccir/partition.hpp"

namespace ccir {

// Constant-Potts quality of a partition: the sum over ordered pairs (i, j),
// i != j, sharing a cluster of (a_ij - r), where a_ij is the adjacency of the
// graph restricted to the partition's members.
double quality(const CitationGraph& graph, const Partition& partition, double resolution);

// Integer ingredients of the quality: internal edge count summed over
// clusters and sum of n_c * (n_c - 1) over clusters. quality = 2 * edges -
// r * pairs.
struct QualityTerms {
  std::int64_t internal_edges = 0;
  std::int64_t ordered_pairs = 0;

  double value(double resolution) const;
};

QualityTerms quality_terms(const CitationGraph& graph, const Partition& partition);

// Change in quality from merging clusters a and b: 2 * (E_ab - r * n_a * n_b).
double merge_delta(const CitationGraph& graph, const Partition& partition, ClusterId a,
                   ClusterId b, double resolution);

// Largest resolution at which merging a and b does not decrease quality:
// E_ab / (n_a * n_b).
double merge_threshold(const CitationGraph& graph, const Partition& partition, ClusterId a,
                       ClusterId b);

// Number of unordered edges running between clusters a and b.
std::int64_t cross_edges(const CitationGraph& graph, const Partition& partition, ClusterId a,
                         ClusterId b);

}  // namespace ccir
