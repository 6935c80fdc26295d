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
#include <vector>

#include "ccir/corpus.hpp"

namespace ccir {

using ClusterId = std::uint32_t;

// Assignment of a document subset to disjoint, non-empty clusters numbered
// 0..k-1. `members` is sorted ascending and `assignment[i]` is the cluster of
// `members[i]`.
struct Partition {
  std::vector<DocIndex> members;
  std::vector<ClusterId> assignment;
  double resolution = 0.0;

  std::size_t cluster_count() const;

  // Member lists per cluster, each sorted ascending, indexed by cluster id.
  std::vector<std::vector<DocIndex>> clusters() const;

  // Throws ccir::Error if the invariants above do not hold.
  void validate() const;

  // Builds a partition whose cluster ids follow the canonical numbering:
  // descending size, then ascending smallest member.
  static Partition from_clusters(std::vector<std::vector<DocIndex>> clusters, double resolution);

  static Partition singletons(std::span<const DocIndex> members, double resolution);

  // The same partition renumbered canonically.
  Partition canonical() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

}  // namespace ccir
