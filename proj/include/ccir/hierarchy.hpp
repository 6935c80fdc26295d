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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ccir/corpus.hpp"
#include "ccir/leiden.hpp"

namespace ccir {

// Per-level resolutions: base * factor^(level - 1) for levels 1..max_depth.
struct ResolutionSchedule {
  double base = 2e-5;
  double factor = 3.0;
  int max_depth = 13;

  void validate() const;
};

double resolution_at(const ResolutionSchedule& schedule, int level);

struct ClusterNode {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::string id;  // "0" for the root, "0.3" for its third child, ...
  int level = 0;
  std::vector<DocIndex> docs;  // sorted, indices into ClusterTree::doc_ids()
  std::vector<std::vector<DocIndex>> excluded;
  bool expanded = false;
  std::size_t parent = npos;
  std::vector<std::size_t> children;  // canonical cluster order
};

// Rooted hierarchy of document clusters, stored in depth-first order. The
// tree owns its document vocabulary so it can be used without the graph it
// was built from.
class ClusterTree {
 public:
  ClusterTree() = default;
  ClusterTree(std::vector<std::string> doc_ids, std::vector<ClusterNode> nodes);

  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::optional<DocIndex> find_doc(std::string_view id) const;

  const std::vector<ClusterNode>& nodes() const { return nodes_; }
  const ClusterNode& root() const { return nodes_.front(); }
  const ClusterNode& node(std::size_t index) const { return nodes_[index]; }

  // Lookup by path id; throws ccir::Error for unknown ids.
  const ClusterNode& node_lookup(std::string_view id) const;
  std::vector<const ClusterNode*> children(std::string_view id) const;
  std::vector<const ClusterNode*> children(const ClusterNode& node) const;

  int max_level() const;
  // Node count per level, index = level.
  std::vector<std::size_t> level_counts() const;

  std::vector<std::string> warnings;

 private:
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, DocIndex> doc_index_;
  std::vector<ClusterNode> nodes_;
  std::unordered_map<std::string, std::size_t> node_index_;
};

using ExpandPredicate = std::function<bool(const ClusterNode&)>;

ExpandPredicate expand_all();
// Expands nodes containing at least one of `docs`.
ExpandPredicate expand_containing(std::vector<DocIndex> docs);

struct TreeConfig {
  ResolutionSchedule schedule;
  std::size_t max_children = 10;
  // Seed, sweep cap and tie policy; the resolution field is ignored and taken
  // from the schedule per level.
  ClusteringConfig clustering;
  unsigned jobs = 1;
};

// Top-down construction: each expandable node is clustered at the next
// level's resolution, capped to max_children, and its clusters become
// children. Documents dropped by the cap are recorded on the node.
ClusterTree build_tree(const CitationGraph& graph, const TreeConfig& config,
                       const ExpandPredicate& expand = expand_all());

// Tab-separated node lines in depth-first order:
// <path-id> <level> <doc ids> <excluded doc ids or '-'>
void write_tree(std::ostream& out, const ClusterTree& tree);
ClusterTree read_tree(std::istream& in);
void save_tree(const std::string& path, const ClusterTree& tree);
ClusterTree load_tree(const std::string& path);

}  // namespace ccir
