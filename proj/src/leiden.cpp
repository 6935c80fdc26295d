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

#include "ccir/leiden.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "ccir/error.hpp"
#include "ccir/random.hpp"

namespace ccir {

void ClusteringConfig::validate() const {
  if (!(resolution >= 0.0)) throw Error(ErrorKind::InvalidArgument, "resolution must be >= 0");
  if (max_sweeps < 1) throw Error(ErrorKind::InvalidArgument, "max_sweeps must be >= 1");
}

namespace {

using Node = std::uint32_t;

// Weighted graph over (possibly aggregated) nodes. Node sizes count original
// documents; edge weights count original edges. No self-loops are stored:
// edges inside an aggregate do not affect moves of that aggregate.
struct LevelGraph {
  std::vector<std::int64_t> size;
  std::vector<std::size_t> offsets{0};
  std::vector<Node> target;
  std::vector<std::int64_t> weight;

  std::size_t node_count() const { return size.size(); }
};

LevelGraph induced_graph(const CitationGraph& graph, std::span<const DocIndex> members) {
  LevelGraph g;
  g.size.assign(members.size(), 1);
  g.offsets.reserve(members.size() + 1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (DocIndex nb : graph.neighbors(members[i])) {
      auto it = std::lower_bound(members.begin(), members.end(), nb);
      if (it != members.end() && *it == nb) {
        g.target.push_back(static_cast<Node>(it - members.begin()));
        g.weight.push_back(1);
      }
    }
    g.offsets.push_back(g.target.size());
  }
  return g;
}

// Renumbers labels to 0..k-1 in order of first appearance; returns k.
std::size_t relabel(std::vector<Node>& labels) {
  std::vector<Node> map(labels.size(), std::numeric_limits<Node>::max());
  Node next = 0;
  for (auto& l : labels) {
    if (map[l] == std::numeric_limits<Node>::max()) map[l] = next++;
    l = map[l];
  }
  return next;
}

// Queue-based local moving. Every node visit considers the clusters of its
// neighbours and an empty cluster, and moves only on strict improvement.
bool move_nodes(const LevelGraph& g, std::vector<Node>& cluster, double r, Rng& rng) {
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> csize(n, 0);
  for (std::size_t v = 0; v < n; ++v) csize[cluster[v]] += g.size[v];
  std::vector<Node> empty;
  for (std::size_t c = n; c-- > 0;) {
    if (csize[c] == 0) empty.push_back(static_cast<Node>(c));
  }

  std::vector<Node> order(n);
  std::iota(order.begin(), order.end(), Node{0});
  shuffle(order.begin(), order.end(), rng);
  std::deque<Node> queue(order.begin(), order.end());
  std::vector<char> queued(n, 1);

  std::vector<std::int64_t> link(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<Node> touched;
  bool changed = false;

  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    queued[v] = 0;

    const Node from = cluster[v];
    const auto s = static_cast<double>(g.size[v]);
    touched.clear();
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const Node c = cluster[g.target[e]];
      if (!seen[c]) {
        seen[c] = 1;
        touched.push_back(c);
      }
      link[c] += g.weight[e];
    }

    csize[from] -= g.size[v];
    Node best = from;
    double best_value = static_cast<double>(link[from]) - r * s * static_cast<double>(csize[from]);
    for (Node c : touched) {
      if (c == from) continue;
      const double value = static_cast<double>(link[c]) - r * s * static_cast<double>(csize[c]);
      if (value > best_value) {
        best = c;
        best_value = value;
      }
    }
    if (0.0 > best_value && csize[from] != 0) {
      best = empty.back();
      empty.pop_back();
    }
    csize[best] += g.size[v];

    if (best != from) {
      changed = true;
      cluster[v] = best;
      if (csize[from] == 0) empty.push_back(from);
      for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        const Node u = g.target[e];
        if (!queued[u] && cluster[u] != best) {
          queued[u] = 1;
          queue.push_back(u);
        }
      }
    }
    for (Node c : touched) {
      link[c] = 0;
      seen[c] = 0;
    }
  }
  return changed;
}

// Refinement: inside each cluster, singletons greedily join well-connected
// sub-clusters, so every refined cluster is connected and nested in its
// cluster.
std::vector<Node> refine(const LevelGraph& g, const std::vector<Node>& cluster, double r,
                         Rng& rng) {
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> csize(n, 0);
  for (std::size_t v = 0; v < n; ++v) csize[cluster[v]] += g.size[v];

  std::vector<Node> refined(n);
  std::iota(refined.begin(), refined.end(), Node{0});
  std::vector<std::int64_t> rsize(g.size);
  std::vector<std::size_t> rcount(n, 1);
  std::vector<std::int64_t> external(n, 0);  // weight from node to rest of its cluster
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      if (cluster[g.target[e]] == cluster[v]) external[v] += g.weight[e];
    }
  }
  std::vector<std::int64_t> rexternal(external);

  std::vector<Node> order(n);
  std::iota(order.begin(), order.end(), Node{0});
  shuffle(order.begin(), order.end(), rng);

  std::vector<std::int64_t> link(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<Node> touched;

  for (Node v : order) {
    if (rcount[refined[v]] != 1) continue;
    const auto cs = static_cast<double>(csize[cluster[v]]);
    const auto s = static_cast<double>(g.size[v]);
    if (static_cast<double>(external[v]) < r * s * (cs - s)) continue;

    touched.clear();
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const Node u = g.target[e];
      if (cluster[u] != cluster[v]) continue;
      const Node c = refined[u];
      if (!seen[c]) {
        seen[c] = 1;
        touched.push_back(c);
      }
      link[c] += g.weight[e];
    }

    const Node own = refined[v];
    Node best = own;
    double best_gain = -1.0;
    for (Node c : touched) {
      if (c == own) continue;
      const auto size_c = static_cast<double>(rsize[c]);
      if (static_cast<double>(rexternal[c]) < r * size_c * (cs - size_c)) continue;
      const double gain = static_cast<double>(link[c]) - r * s * size_c;
      if (gain >= 0.0 && gain > best_gain) {
        best = c;
        best_gain = gain;
      }
    }
    if (best != own) {
      rexternal[best] += external[v] - 2 * link[best];
      rsize[best] += g.size[v];
      rcount[best] += 1;
      rsize[own] = 0;
      rcount[own] = 0;
      refined[v] = best;
    }
    for (Node c : touched) {
      link[c] = 0;
      seen[c] = 0;
    }
  }
  return refined;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<Node>& groups, std::size_t count) {
  std::vector<std::vector<Node>> members(count);
  for (std::size_t v = 0; v < g.node_count(); ++v) members[groups[v]].push_back(static_cast<Node>(v));

  LevelGraph out;
  out.size.assign(count, 0);
  std::vector<std::int64_t> link(count, 0);
  std::vector<Node> touched;
  for (std::size_t a = 0; a < count; ++a) {
    touched.clear();
    for (Node v : members[a]) {
      out.size[a] += g.size[v];
      for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        const Node b = groups[g.target[e]];
        if (b == a) continue;
        if (link[b] == 0) touched.push_back(b);
        link[b] += g.weight[e];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (Node b : touched) {
      out.target.push_back(b);
      out.weight.push_back(link[b]);
      link[b] = 0;
    }
    out.offsets.push_back(out.target.size());
  }
  return out;
}

// Splits clusters that are not connected into their components.
bool split_disconnected(const LevelGraph& g, std::vector<Node>& cluster) {
  const std::size_t n = g.node_count();
  std::vector<char> visited(n, 0);
  std::vector<char> label_used(n, 0);
  Node next_label = static_cast<Node>(relabel(cluster));
  bool split = false;
  std::vector<Node> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    const Node c = cluster[start];
    Node label = c;
    if (label_used[c]) {
      label = next_label++;
      split = true;
    }
    label_used[c] = 1;
    visited[start] = 1;
    stack.assign(1, static_cast<Node>(start));
    while (!stack.empty()) {
      const Node v = stack.back();
      stack.pop_back();
      cluster[v] = label;
      for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        const Node u = g.target[e];
        if (!visited[u] && cluster[u] == c) {
          visited[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return split;
}

std::vector<DocIndex> sorted_members(const CitationGraph& graph, std::span<const DocIndex> members) {
  std::vector<DocIndex> out(members.begin(), members.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(ErrorKind::InvalidArgument, "member set contains duplicates");
  }
  if (!out.empty() && out.back() >= graph.document_count()) {
    throw Error(ErrorKind::Data, "member set references a document not in the graph");
  }
  return out;
}

}  // namespace

ClusteringResult cluster(const CitationGraph& graph, std::span<const DocIndex> members,
                         const ClusteringConfig& config) {
  config.validate();
  if (members.empty()) throw Error(ErrorKind::InvalidArgument, "cannot cluster an empty member set");
  const auto docs = sorted_members(graph, members);
  const double r = config.resolution;
  const LevelGraph base = induced_graph(graph, docs);
  const std::size_t m = docs.size();
  Rng rng(config.seed);

  std::vector<Node> part(m);
  std::iota(part.begin(), part.end(), Node{0});
  bool stable = false;
  for (int iteration = 0; iteration < config.max_sweeps && !stable; ++iteration) {
    LevelGraph current = base;
    std::vector<Node> clusters = part;
    std::vector<Node> node_of(m);
    std::iota(node_of.begin(), node_of.end(), Node{0});
    bool changed = false;
    for (;;) {
      changed |= move_nodes(current, clusters, r, rng);
      const std::size_t k = relabel(clusters);
      if (k == current.node_count()) break;
      auto refined = refine(current, clusters, r, rng);
      std::size_t kr = relabel(refined);
      if (kr == current.node_count()) {
        // Refinement left only singletons; aggregate by the clusters instead.
        refined = clusters;
        kr = k;
      }
      std::vector<Node> next_clusters(kr);
      for (std::size_t v = 0; v < current.node_count(); ++v) next_clusters[refined[v]] = clusters[v];
      for (auto& node : node_of) node = refined[node];
      current = aggregate(current, refined, kr);
      clusters = std::move(next_clusters);
    }
    for (std::size_t i = 0; i < m; ++i) part[i] = clusters[node_of[i]];
    relabel(part);
    stable = !changed;
  }

  bool polished = false;
  for (int pass = 0; pass < config.max_sweeps && !polished; ++pass) {
    const bool moved = move_nodes(base, part, r, rng);
    relabel(part);
    const bool split = split_disconnected(base, part);
    polished = !moved && !split;
  }

  ClusteringResult result;
  std::vector<std::vector<DocIndex>> groups(relabel(part));
  for (std::size_t i = 0; i < m; ++i) groups[part[i]].push_back(docs[i]);
  result.partition = Partition::from_clusters(std::move(groups), r);
  result.converged = stable && polished;
  if (!result.converged) {
    result.warnings.push_back("clustering of " + std::to_string(m) +
                              " documents reached max_sweeps=" + std::to_string(config.max_sweeps) +
                              "; local optimality not guaranteed");
  }
  return result;
}

namespace {

struct CapCluster {
  std::vector<DocIndex> docs;
  std::map<std::size_t, std::int64_t> links;  // other cluster -> edge count
  bool alive = true;
};

// Canonical order among live clusters: descending size, then ascending
// smallest member.
bool canonical_before(const CapCluster& a, const CapCluster& b) {
  if (a.docs.size() != b.docs.size()) return a.docs.size() > b.docs.size();
  return a.docs.front() < b.docs.front();
}

}  // namespace

CapResult cap_children(const CitationGraph& graph, const Partition& partition,
                       std::size_t max_clusters, const ClusteringConfig& config) {
  config.validate();
  if (max_clusters < 1) throw Error(ErrorKind::InvalidArgument, "max_clusters must be >= 1");
  partition.validate();
  if (!partition.members.empty() && partition.members.back() >= graph.document_count()) {
    throw Error(ErrorKind::Data, "partition references a document not in the graph");
  }
  const double r = partition.resolution;

  std::vector<CapCluster> cl;
  for (auto& docs : partition.clusters()) cl.push_back({std::move(docs), {}, true});
  for (std::size_t i = 0; i < partition.members.size(); ++i) {
    const auto a = partition.assignment[i];
    for (DocIndex nb : graph.neighbors(partition.members[i])) {
      auto it = std::lower_bound(partition.members.begin(), partition.members.end(), nb);
      if (it == partition.members.end() || *it != nb) continue;
      const auto b = partition.assignment[static_cast<std::size_t>(it - partition.members.begin())];
      if (a != b) ++cl[a].links[b];
    }
  }

  CapResult result;
  Rng rng(derive_seed(config.seed, "cap_children"));
  std::size_t alive = cl.size();
  while (alive > max_clusters) {
    // Step 1: smallest cluster.
    std::vector<std::size_t> smallest;
    for (std::size_t c = 0; c < cl.size(); ++c) {
      if (!cl[c].alive) continue;
      if (smallest.empty() || cl[c].docs.size() < cl[smallest.front()].docs.size()) {
        smallest.assign(1, c);
      } else if (cl[c].docs.size() == cl[smallest.front()].docs.size()) {
        smallest.push_back(c);
      }
    }
    std::sort(smallest.begin(), smallest.end(),
              [&](std::size_t a, std::size_t b) { return canonical_before(cl[a], cl[b]); });
    const std::size_t s =
        config.random_size_ties ? smallest[uniform_below(rng, smallest.size())] : smallest.front();

    // Step 2: no links leaving the cluster.
    if (cl[s].links.empty()) {
      result.excluded.push_back(cl[s].docs);
      cl[s].alive = false;
      --alive;
      continue;
    }

    // Step 3: highest merge threshold.
    const auto ns = static_cast<double>(cl[s].docs.size());
    std::size_t partner = 0;
    double best = -1.0;
    std::int64_t best_edges = 0;
    for (auto [o, edges] : cl[s].links) {
      const double threshold =
          static_cast<double>(edges) / (ns * static_cast<double>(cl[o].docs.size()));
      if (threshold > best || (threshold == best && canonical_before(cl[o], cl[partner]))) {
        partner = o;
        best = threshold;
        best_edges = edges;
      }
    }
    if (best > r) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "merge threshold %.6g exceeds the clustering resolution %.6g", best, r);
      result.warnings.emplace_back(buf);
    }

    // Step 4: merge.
    MergeRecord record;
    record.selected = cl[s].docs;
    record.partner = cl[partner].docs;
    record.threshold = best;
    record.delta = 2.0 * (static_cast<double>(best_edges) -
                          r * ns * static_cast<double>(cl[partner].docs.size()));
    result.merges.push_back(std::move(record));

    auto& into = cl[partner];
    std::vector<DocIndex> merged;
    merged.reserve(into.docs.size() + cl[s].docs.size());
    std::merge(into.docs.begin(), into.docs.end(), cl[s].docs.begin(), cl[s].docs.end(),
               std::back_inserter(merged));
    into.docs = std::move(merged);
    for (auto [o, edges] : cl[s].links) {
      cl[o].links.erase(s);
      if (o == partner) continue;
      into.links[o] += edges;
      cl[o].links[partner] += edges;
    }
    cl[s].links.clear();
    cl[s].alive = false;
    --alive;
  }

  std::vector<std::vector<DocIndex>> kept;
  for (auto& c : cl) {
    if (c.alive) kept.push_back(std::move(c.docs));
  }
  result.partition = Partition::from_clusters(std::move(kept), r);
  return result;
}

}  // namespace ccir
