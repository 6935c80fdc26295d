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

#include "ccir/partition.hpp"

#include <algorithm>

#include "ccir/error.hpp"

namespace ccir {

std::size_t Partition::cluster_count() const {
  if (assignment.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(assignment.begin(), assignment.end())) + 1;
}

std::vector<std::vector<DocIndex>> Partition::clusters() const {
  std::vector<std::vector<DocIndex>> out(cluster_count());
  for (std::size_t i = 0; i < members.size(); ++i) out[assignment[i]].push_back(members[i]);
  return out;
}

void Partition::validate() const {
  if (members.size() != assignment.size()) {
    throw Error(ErrorKind::Data, "partition members and assignment differ in length");
  }
  if (!(resolution >= 0.0)) throw Error(ErrorKind::InvalidArgument, "resolution must be >= 0");
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i - 1] >= members[i]) {
      throw Error(ErrorKind::Data, "partition members must be sorted and unique");
    }
  }
  std::vector<std::size_t> sizes(cluster_count(), 0);
  for (auto c : assignment) ++sizes[c];
  if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) {
    throw Error(ErrorKind::Data, "partition has an empty cluster id");
  }
}

Partition Partition::from_clusters(std::vector<std::vector<DocIndex>> clusters, double resolution) {
  std::erase_if(clusters, [](const auto& c) { return c.empty(); });
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  std::vector<std::pair<DocIndex, ClusterId>> pairs;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (auto d : clusters[c]) pairs.emplace_back(d, static_cast<ClusterId>(c));
  }
  std::sort(pairs.begin(), pairs.end());
  Partition p;
  p.resolution = resolution;
  p.members.reserve(pairs.size());
  p.assignment.reserve(pairs.size());
  for (auto [d, c] : pairs) {
    if (!p.members.empty() && p.members.back() == d) {
      throw Error(ErrorKind::Data, "document assigned to more than one cluster");
    }
    p.members.push_back(d);
    p.assignment.push_back(c);
  }
  return p;
}

Partition Partition::singletons(std::span<const DocIndex> members, double resolution) {
  std::vector<std::vector<DocIndex>> clusters;
  clusters.reserve(members.size());
  for (auto d : members) clusters.push_back({d});
  return from_clusters(std::move(clusters), resolution);
}

Partition Partition::canonical() const { return from_clusters(clusters(), resolution); }

}  // namespace ccir
