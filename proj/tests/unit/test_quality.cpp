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

#include <random>

#include "ccir/error.hpp"
#include "ccir/quality.hpp"
#include "doctest.h"
#include "support/graphs.hpp"
#include "support/oracles.hpp"

using namespace ccir;
using ccir::testing::node;
using ccir::testing::numbered_graph;

namespace {

Partition make(std::vector<std::vector<int>> groups, double r = 0.0) {
  std::vector<std::vector<DocIndex>> clusters;
  for (auto& g : groups) {
    clusters.emplace_back();
    for (int i : g) clusters.back().push_back(node(i));
  }
  return Partition::from_clusters(clusters, r);
}

// Sign change of the brute-force merge delta on a grid of step 1e-4.
double swept_threshold(const CitationGraph& g, const Partition& p, ClusterId a, ClusterId b) {
  auto clusters = p.clusters();
  auto merged = clusters;
  merged[a].insert(merged[a].end(), merged[b].begin(), merged[b].end());
  merged.erase(merged.begin() + b);
  double last_nonnegative = 0.0;
  for (int step = 0; step <= 20000; ++step) {
    const double r = step * 1e-4;
    const double delta = oracle::quality(g, merged, r) - oracle::quality(g, clusters, r);
    if (delta >= -1e-9) last_nonnegative = r;
  }
  return last_nonnegative;
}

}  // namespace

TEST_SUITE("quality") {

TEST_CASE("all-singleton partition has zero quality") {
  auto g = numbered_graph(4, {{1, 2}, {2, 3}, {3, 4}});
  auto p = make({{1}, {2}, {3}, {4}});
  for (double r : {0.0, 0.3, 2.0}) CHECK(quality(g, p, r) == 0.0);
}

TEST_CASE("triangle in one cluster") {
  auto g = numbered_graph(3, {{1, 2}, {2, 3}, {1, 3}});
  auto p = make({{1, 2, 3}});
  // six ordered pairs, each linked
  CHECK(oracle::quality(g, p.clusters(), 0.1) == doctest::Approx(5.4));
  CHECK(quality(g, p, 0.1) == doctest::Approx(5.4).epsilon(1e-15));
}

TEST_CASE("path 1-2-3 ties between one cluster and {1,2}{3}") {
  auto g = numbered_graph(3, {{1, 2}, {2, 3}});
  CHECK(oracle::quality(g, make({{1, 2, 3}}).clusters(), 0.5) == 1.0);
  CHECK(oracle::quality(g, make({{1, 2}, {3}}).clusters(), 0.5) == 1.0);
  CHECK(quality(g, make({{1, 2, 3}}), 0.5) == 1.0);
  CHECK(quality(g, make({{1, 2}, {3}}), 0.5) == 1.0);
}

TEST_CASE("merge_delta examples") {
  auto g = numbered_graph(3, {{1, 2}, {2, 3}});
  auto p = make({{1, 2}, {3}});
  const auto before = oracle::quality(g, p.clusters(), 0.5);
  const auto after = oracle::quality(g, {{node(1), node(2), node(3)}}, 0.5);
  CHECK(after - before == 0.0);
  CHECK(merge_delta(g, p, 0, 1, 0.5) == 0.0);
  CHECK(oracle::quality(g, {{node(1), node(2), node(3)}}, 0.25) -
            oracle::quality(g, p.clusters(), 0.25) ==
        doctest::Approx(1.0));
  CHECK(merge_delta(g, p, 0, 1, 0.25) == 1.0);

  auto disjoint = numbered_graph(4, {{1, 2}, {3, 4}});
  auto q = make({{1, 2}, {3, 4}});
  CHECK(merge_delta(disjoint, q, 0, 1, 0.3) == doctest::Approx(-2 * 0.3 * 2 * 2));
}

TEST_CASE("merge_threshold examples against a resolution sweep") {
  auto g = numbered_graph(3, {{1, 2}, {2, 3}});
  auto p = make({{1, 2}, {3}});
  CHECK(merge_threshold(g, p, 0, 1) == 0.5);
  CHECK(swept_threshold(g, p, 0, 1) == doctest::Approx(0.5).epsilon(1e-9));

  auto disjoint = numbered_graph(4, {{1, 2}, {3, 4}});
  CHECK(merge_threshold(disjoint, make({{1, 2}, {3, 4}}), 0, 1) == 0.0);

  auto bipartite = numbered_graph(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}});
  auto bp = make({{1, 2}, {3, 4}});
  CHECK(merge_threshold(bipartite, bp, 0, 1) == 1.0);
  CHECK(swept_threshold(bipartite, bp, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("errors") {
  auto g = numbered_graph(3, {{1, 2}});
  auto p = make({{1, 2}, {3}});
  CHECK_THROWS_AS(merge_delta(g, p, 0, 5, 0.1), Error);
  CHECK_THROWS_AS(merge_delta(g, p, 1, 1, 0.1), Error);
  CHECK_THROWS_AS(merge_threshold(g, p, 0, 2), Error);
  CHECK_THROWS_AS(quality(g, p, -0.1), Error);
  auto small = numbered_graph(2, {{1, 2}});
  CHECK_THROWS_AS(quality(small, p, 0.1), Error);
}

TEST_CASE("quality matches the ordered-pair oracle and the per-cluster form") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 7;
    auto g = oracle::random_graph(n, 0.45, rng);
    std::vector<std::vector<DocIndex>> clusters(1 + rng() % n);
    for (DocIndex d = 0; d < n; ++d) clusters[rng() % clusters.size()].push_back(d);
    const double r = (rng() % 1000) / 800.0;
    auto p = Partition::from_clusters(clusters, r);
    CHECK(quality(g, p, r) == doctest::Approx(oracle::quality(g, p.clusters(), r)).epsilon(1e-12));

    double per_cluster = 0.0;
    for (const auto& c : p.clusters()) {
      double internal = 0;
      for (auto a : c)
        for (auto b : c)
          if (a < b && g.has_edge(a, b)) ++internal;
      const double size = static_cast<double>(c.size());
      per_cluster += 2 * (internal - r * size * (size - 1) / 2);
    }
    CHECK(quality(g, p, r) == doctest::Approx(per_cluster).epsilon(1e-12));
  }
}

TEST_CASE("excluding self-pairs does not change the optimal partition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 4;
    auto g = oracle::random_graph(n, 0.5, rng);
    const double r = 0.1 + (trial % 7) * 0.12;
    std::vector<DocIndex> items(n);
    std::iota(items.begin(), items.end(), DocIndex{0});
    double best_without = -1e300, best_with = -1e300;
    oracle::Clusters arg_without, arg_with;
    oracle::for_each_partition(items, [&](const oracle::Clusters& c) {
      const double q0 = oracle::quality(g, c, r, false);
      const double q1 = oracle::quality(g, c, r, true);
      CHECK(q1 == doctest::Approx(q0 - r * static_cast<double>(n)));
      if (q0 > best_without + 1e-12) best_without = q0, arg_without = c;
      if (q1 > best_with + 1e-12) best_with = q1, arg_with = c;
    });
    CHECK(arg_without == arg_with);
  }
}

TEST_CASE("merge_delta is symmetric and vanishes at the threshold") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = oracle::random_graph(8, 0.4, rng);
    std::vector<std::vector<DocIndex>> clusters(3);
    for (DocIndex d = 0; d < 8; ++d) clusters[d % 3].push_back(d);
    auto p = Partition::from_clusters(clusters, 0.2);
    for (ClusterId a = 0; a < 3; ++a) {
      for (ClusterId b = 0; b < 3; ++b) {
        if (a == b) continue;
        CHECK(merge_delta(g, p, a, b, 0.37) == merge_delta(g, p, b, a, 0.37));
        CHECK(std::abs(merge_delta(g, p, a, b, merge_threshold(g, p, a, b))) <= 1e-12);
      }
    }
  }
}

}
