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

#include "ccir/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>

#include "ccir/error.hpp"
#include "ccir/random.hpp"
#include "parallel.hpp"
#include "text_io.hpp"

namespace ccir {

void ResolutionSchedule::validate() const {
  if (!(base > 0.0)) throw Error(ErrorKind::InvalidArgument, "base resolution must be > 0");
  if (!(factor > 1.0)) throw Error(ErrorKind::InvalidArgument, "resolution factor must be > 1");
  if (max_depth < 1) throw Error(ErrorKind::InvalidArgument, "max_depth must be >= 1");
}

double resolution_at(const ResolutionSchedule& schedule, int level) {
  schedule.validate();
  if (level < 1 || level > schedule.max_depth) {
    throw Error(ErrorKind::InvalidArgument,
                "level " + std::to_string(level) + " outside 1.." + std::to_string(schedule.max_depth));
  }
  double r = schedule.base;
  for (int l = 1; l < level; ++l) r *= schedule.factor;
  return r;
}

ClusterTree::ClusterTree(std::vector<std::string> doc_ids, std::vector<ClusterNode> nodes)
    : doc_ids_(std::move(doc_ids)), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorKind::Data, "a cluster tree needs a root node");
  doc_index_.reserve(doc_ids_.size());
  for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
    if (!doc_index_.emplace(doc_ids_[i], static_cast<DocIndex>(i)).second) {
      throw Error(ErrorKind::Data, "duplicate document id '" + doc_ids_[i] + "' in tree");
    }
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!node_index_.emplace(nodes_[i].id, i).second) {
      throw Error(ErrorKind::Data, "duplicate node id '" + nodes_[i].id + "'");
    }
  }
}

std::optional<DocIndex> ClusterTree::find_doc(std::string_view id) const {
  auto it = doc_index_.find(std::string(id));
  if (it == doc_index_.end()) return std::nullopt;
  return it->second;
}

const ClusterNode& ClusterTree::node_lookup(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) {
    throw Error(ErrorKind::InvalidArgument, "unknown node id '" + std::string(id) + "'");
  }
  return nodes_[it->second];
}

std::vector<const ClusterNode*> ClusterTree::children(const ClusterNode& node) const {
  std::vector<const ClusterNode*> out;
  out.reserve(node.children.size());
  for (auto c : node.children) out.push_back(&nodes_[c]);
  return out;
}

std::vector<const ClusterNode*> ClusterTree::children(std::string_view id) const {
  return children(node_lookup(id));
}

int ClusterTree::max_level() const {
  int level = 0;
  for (const auto& n : nodes_) level = std::max(level, n.level);
  return level;
}

std::vector<std::size_t> ClusterTree::level_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(max_level()) + 1, 0);
  for (const auto& n : nodes_) ++counts[static_cast<std::size_t>(n.level)];
  return counts;
}

ExpandPredicate expand_all() {
  return [](const ClusterNode&) { return true; };
}

ExpandPredicate expand_containing(std::vector<DocIndex> docs) {
  std::sort(docs.begin(), docs.end());
  auto shared = std::make_shared<const std::vector<DocIndex>>(std::move(docs));
  return [shared](const ClusterNode& node) {
    const auto& wanted = *shared;
    return std::any_of(node.docs.begin(), node.docs.end(), [&](DocIndex d) {
      return std::binary_search(wanted.begin(), wanted.end(), d);
    });
  };
}

namespace {

struct Expansion {
  std::vector<std::vector<DocIndex>> children;
  std::vector<std::vector<DocIndex>> excluded;
  std::vector<std::string> warnings;
};

// Reorders nodes depth-first, fixing up parent and child indices.
std::vector<ClusterNode> depth_first(std::vector<ClusterNode> nodes) {
  std::vector<std::size_t> order;
  order.reserve(nodes.size());
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    order.push_back(i);
    const auto& ch = nodes[i].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  std::vector<std::size_t> position(nodes.size());
  for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = p;
  std::vector<ClusterNode> out;
  out.reserve(nodes.size());
  for (auto i : order) {
    auto n = std::move(nodes[i]);
    if (n.parent != ClusterNode::npos) n.parent = position[n.parent];
    for (auto& c : n.children) c = position[c];
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

ClusterTree build_tree(const CitationGraph& graph, const TreeConfig& config,
                       const ExpandPredicate& expand) {
  config.schedule.validate();
  config.clustering.validate();
  if (config.max_children < 1) throw Error(ErrorKind::InvalidArgument, "max_children must be >= 1");
  if (graph.empty()) throw Error(ErrorKind::InvalidArgument, "cannot build a tree over an empty graph");

  std::vector<ClusterNode> nodes(1);
  nodes[0].id = "0";
  nodes[0].docs.resize(graph.document_count());
  std::iota(nodes[0].docs.begin(), nodes[0].docs.end(), DocIndex{0});

  std::vector<std::string> warnings;
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> targets;
    for (auto i : frontier) {
      const auto& n = nodes[i];
      if (n.level < config.schedule.max_depth && n.docs.size() >= 2 && (!expand || expand(n))) {
        targets.push_back(i);
      }
    }

    std::vector<Expansion> results(targets.size());
    detail::parallel_for(targets.size(), config.jobs, [&](std::size_t k) {
      const auto& n = nodes[targets[k]];
      ClusteringConfig cfg = config.clustering;
      cfg.resolution = resolution_at(config.schedule, n.level + 1);
      cfg.seed = derive_seed(config.clustering.seed, "leiden:" + n.id);
      auto clustered = cluster(graph, n.docs, cfg);
      auto capped = cap_children(graph, clustered.partition, config.max_children, cfg);
      auto& out = results[k];
      out.children = capped.partition.clusters();
      out.excluded = std::move(capped.excluded);
      for (auto& w : clustered.warnings) out.warnings.push_back("node " + n.id + ": " + w);
      for (auto& w : capped.warnings) out.warnings.push_back("node " + n.id + ": " + w);
    });

    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const auto parent = targets[k];
      nodes[parent].expanded = true;
      nodes[parent].excluded = std::move(results[k].excluded);
      for (std::size_t c = 0; c < results[k].children.size(); ++c) {
        ClusterNode child;
        child.id = nodes[parent].id + "." + std::to_string(c + 1);
        child.level = nodes[parent].level + 1;
        child.docs = std::move(results[k].children[c]);
        child.parent = parent;
        nodes.push_back(std::move(child));
        nodes[parent].children.push_back(nodes.size() - 1);
        next.push_back(nodes.size() - 1);
      }
      for (auto& w : results[k].warnings) warnings.push_back(std::move(w));
    }
    frontier = std::move(next);
  }

  std::vector<std::string> ids;
  ids.reserve(graph.document_count());
  for (const auto& d : graph.documents()) ids.push_back(d.id);
  ClusterTree tree(std::move(ids), depth_first(std::move(nodes)));
  tree.warnings = std::move(warnings);
  return tree;
}

void write_tree(std::ostream& out, const ClusterTree& tree) {
  const auto& ids = tree.doc_ids();
  auto write_list = [&](const std::vector<DocIndex>& docs, bool& first) {
    for (auto d : docs) {
      if (!first) out << ' ';
      out << ids[d];
      first = false;
    }
  };
  for (const auto& n : tree.nodes()) {
    out << n.id << '\t' << n.level << '\t';
    bool first = true;
    write_list(n.docs, first);
    out << '\t';
    first = true;
    for (const auto& set : n.excluded) write_list(set, first);
    if (first) out << '-';
    out << '\n';
  }
}

namespace {

[[noreturn]] void tree_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "tree line " + std::to_string(line) + ": " + what);
}

}  // namespace

ClusterTree read_tree(std::istream& in) {
  std::vector<ClusterNode> nodes;
  std::vector<std::string> vocabulary;
  std::unordered_map<std::string, DocIndex> vocab_index;
  std::unordered_map<std::string, std::size_t> by_id;

  auto resolve = [&](std::string_view token, std::size_t line) {
    auto it = vocab_index.find(std::string(token));
    if (it == vocab_index.end()) tree_error(line, "document '" + std::string(token) + "' not in root");
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty()) continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 4) tree_error(line_no, "expected 4 tab-separated fields");

    ClusterNode node;
    node.id = std::string(fields[0]);
    if (!detail::parse_number(fields[1], node.level)) tree_error(line_no, "invalid level");
    auto doc_tokens = detail::tokens(fields[2]);
    if (doc_tokens.empty()) tree_error(line_no, "node has no documents");

    if (nodes.empty()) {
      if (node.id != "0" || node.level != 0) tree_error(line_no, "first node must be root '0' at level 0");
      for (auto t : doc_tokens) {
        if (!vocab_index.emplace(std::string(t), static_cast<DocIndex>(vocabulary.size())).second) {
          tree_error(line_no, "duplicate document '" + std::string(t) + "'");
        }
        vocabulary.emplace_back(t);
      }
    } else {
      const auto dot = node.id.rfind('.');
      if (dot == std::string::npos) tree_error(line_no, "malformed node id '" + node.id + "'");
      auto parent_it = by_id.find(node.id.substr(0, dot));
      if (parent_it == by_id.end()) tree_error(line_no, "parent of '" + node.id + "' not seen before it");
      node.parent = parent_it->second;
      auto& parent = nodes[node.parent];
      if (node.level != parent.level + 1) tree_error(line_no, "level must be parent level + 1");
      if (node.id.substr(dot + 1) != std::to_string(parent.children.size() + 1)) {
        tree_error(line_no, "children of '" + parent.id + "' out of order");
      }
    }
    for (auto t : doc_tokens) node.docs.push_back(resolve(t, line_no));
    if (fields[3] != "-") {
      std::vector<DocIndex> excluded;
      for (auto t : detail::tokens(fields[3])) excluded.push_back(resolve(t, line_no));
      if (excluded.empty()) tree_error(line_no, "empty excluded field must be '-'");
      node.excluded.push_back(std::move(excluded));
    }
    if (!std::is_sorted(node.docs.begin(), node.docs.end()) ||
        std::adjacent_find(node.docs.begin(), node.docs.end()) != node.docs.end()) {
      tree_error(line_no, "documents must follow root order without repeats");
    }

    const auto index = nodes.size();
    if (!by_id.emplace(node.id, index).second) tree_error(line_no, "duplicate node id '" + node.id + "'");
    if (node.parent != ClusterNode::npos) {
      nodes[node.parent].children.push_back(index);
      nodes[node.parent].expanded = true;
    }
    if (!node.excluded.empty()) node.expanded = true;
    nodes.push_back(std::move(node));
  }
  if (nodes.empty()) throw Error(ErrorKind::Parse, "tree file has no nodes");

  // Children and excluded documents must partition every expanded node.
  std::vector<char> seen(vocabulary.size(), 0);
  for (const auto& n : nodes) {
    if (!n.expanded) continue;
    std::size_t covered = 0;
    auto mark = [&](const std::vector<DocIndex>& docs) {
      for (auto d : docs) {
        if (seen[d] || !std::binary_search(n.docs.begin(), n.docs.end(), d)) {
          throw Error(ErrorKind::Data, "children of node '" + n.id + "' do not partition its documents");
        }
        seen[d] = 1;
        ++covered;
      }
    };
    for (auto c : n.children) mark(nodes[c].docs);
    for (const auto& set : n.excluded) mark(set);
    if (covered != n.docs.size()) {
      throw Error(ErrorKind::Data, "children of node '" + n.id + "' do not cover its documents");
    }
    for (auto d : n.docs) seen[d] = 0;
  }
  return ClusterTree(std::move(vocabulary), std::move(nodes));
}

void save_tree(const std::string& path, const ClusterTree& tree) {
  auto out = detail::open_output(path);
  write_tree(out, tree);
  detail::finish_output(out, path);
}

ClusterTree load_tree(const std::string& path) {
  auto in = detail::open_input(path);
  return read_tree(in);
}

}  // namespace ccir
