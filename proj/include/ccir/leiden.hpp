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
#include <span>
#include <string>
#include <vector>

#include "ccir/corpus.hpp"
#include "ccir/partition.hpp"

namespace ccir {

struct ClusteringConfig {
  double resolution = 0.0;
  std::uint64_t seed = 0;
  // Cap on Leiden iterations, and separately on node-level polishing passes.
  int max_sweeps = 100;
  // When several clusters tie for smallest in cap_children, pick one with the
  // seeded generator instead of the smallest canonical id.
  bool random_size_ties = false;

  void validate() const;
};

struct ClusteringResult {
  Partition partition;
  // False when max_sweeps was reached; local optimality is then not
  // guaranteed.
  bool converged = true;
  std::vector<std::string> warnings;
};

// Leiden optimisation of the constant-Potts quality on the subgraph induced
// by `members`. The result is node-level locally optimal, every cluster is
// connected and the output is a deterministic function of the inputs.
ClusteringResult cluster(const CitationGraph& graph, std::span<const DocIndex> members,
                         const ClusteringConfig& config);

struct MergeRecord {
  std::vector<DocIndex> selected;  // the smallest cluster
  std::vector<DocIndex> partner;   // cluster it merged into
  double threshold = 0.0;
  double delta = 0.0;  // quality change at the partition's resolution
};

struct CapResult {
  Partition partition;
  std::vector<std::vector<DocIndex>> excluded;
  std::vector<MergeRecord> merges;
  std::vector<std::string> warnings;
};

// Reduces a partition to at most `max_clusters` clusters: repeatedly take the
// smallest cluster, drop it if it has no edges leaving it, otherwise merge it
// into the cluster with the highest merge threshold. Threshold ties go to the
// smallest canonical id.
CapResult cap_children(const CitationGraph& graph, const Partition& partition,
                       std::size_t max_clusters, const ClusteringConfig& config);

}  // namespace ccir
