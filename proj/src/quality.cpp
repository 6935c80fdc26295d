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

#include "ccir/quality.hpp"

#include <algorithm>

#include "ccir/error.hpp"

namespace ccir {

namespace {

void check_members(const CitationGraph& graph, const Partition& partition) {
  if (!partition.members.empty() && partition.members.back() >= graph.document_count()) {
    throw Error(ErrorKind::Data, "partition references a document not in the graph");
  }
}

void check_resolution(double r) {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "resolution must be >= 0");
}

// Cluster of document d within the partition, if d is a member.
const ClusterId* cluster_of(const Partition& p, DocIndex d) {
  auto it = std::lower_bound(p.members.begin(), p.members.end(), d);
  if (it == p.members.end() || *it != d) return nullptr;
  return &p.assignment[static_cast<std::size_t>(it - p.members.begin())];
}

std::int64_t cluster_size(const Partition& p, ClusterId c) {
  return std::count(p.assignment.begin(), p.assignment.end(), c);
}

void check_pair(const Partition& p, ClusterId a, ClusterId b) {
  const auto k = p.cluster_count();
  if (a >= k || b >= k) throw Error(ErrorKind::InvalidArgument, "unknown cluster id");
  if (a == b) throw Error(ErrorKind::InvalidArgument, "cannot merge a cluster with itself");
}

}  // namespace

double QualityTerms::value(double resolution) const {
  return 2.0 * static_cast<double>(internal_edges) -
         resolution * static_cast<double>(ordered_pairs);
}

QualityTerms quality_terms(const CitationGraph& graph, const Partition& partition) {
  check_members(graph, partition);
  QualityTerms t;
  for (std::size_t i = 0; i < partition.members.size(); ++i) {
    const DocIndex d = partition.members[i];
    for (DocIndex nb : graph.neighbors(d)) {
      if (nb <= d) continue;
      const ClusterId* c = cluster_of(partition, nb);
      if (c && *c == partition.assignment[i]) ++t.internal_edges;
    }
  }
  std::vector<std::int64_t> sizes(partition.cluster_count(), 0);
  for (auto c : partition.assignment) ++sizes[c];
  for (auto n : sizes) t.ordered_pairs += n * (n - 1);
  return t;
}

double quality(const CitationGraph& graph, const Partition& partition, double resolution) {
  check_resolution(resolution);
  return quality_terms(graph, partition).value(resolution);
}

std::int64_t cross_edges(const CitationGraph& graph, const Partition& partition, ClusterId a,
                         ClusterId b) {
  check_members(graph, partition);
  check_pair(partition, a, b);
  std::int64_t count = 0;
  for (std::size_t i = 0; i < partition.members.size(); ++i) {
    if (partition.assignment[i] != a) continue;
    for (DocIndex nb : graph.neighbors(partition.members[i])) {
      const ClusterId* c = cluster_of(partition, nb);
      if (c && *c == b) ++count;
    }
  }
  return count;
}

double merge_delta(const CitationGraph& graph, const Partition& partition, ClusterId a,
                   ClusterId b, double resolution) {
  check_resolution(resolution);
  const auto edges = cross_edges(graph, partition, a, b);
  const auto pairs = cluster_size(partition, a) * cluster_size(partition, b);
  return 2.0 * (static_cast<double>(edges) - resolution * static_cast<double>(pairs));
}

double merge_threshold(const CitationGraph& graph, const Partition& partition, ClusterId a,
                       ClusterId b) {
  const auto edges = cross_edges(graph, partition, a, b);
  const auto pairs = cluster_size(partition, a) * cluster_size(partition, b);
  return static_cast<double>(edges) / static_cast<double>(pairs);
}

}  // namespace ccir
