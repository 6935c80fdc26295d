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

#include "ccir/selection.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "ccir/error.hpp"
#include "text_io.hpp"

namespace ccir {

namespace {

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void RelevanceCase::normalize() {
  sort_unique(relevant);
  sort_unique(baseline_retrieved);
  validate();
}

void RelevanceCase::validate() const {
  if (relevant.empty()) {
    throw Error(ErrorKind::Data, "case '" + case_id + "' has no relevant documents");
  }
  if (!std::includes(baseline_retrieved.begin(), baseline_retrieved.end(), relevant.begin(),
                     relevant.end())) {
    throw Error(ErrorKind::Data,
                "case '" + case_id + "': relevant documents must be a subset of the baseline set");
  }
}

std::vector<RelevanceCase> read_cases(std::istream& in) {
  std::vector<RelevanceCase> cases;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  // 0: expecting "case", 1: expecting "relevant:", 2: expecting "baseline:".
  int state = 0;
  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorKind::Parse, "cases line " + std::to_string(line_no) + ": " + what);
  };
  auto id_list = [](std::string_view rest) {
    std::vector<std::string> out;
    for (auto t : detail::tokens(rest)) out.emplace_back(t);
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty() || line[0] == '#' || detail::is_blank(line)) continue;
    std::string_view view(line);
    if (state == 0) {
      auto t = detail::tokens(view);
      if (t.size() != 4 || t[0] != "case") fail("expected 'case <id> <task_year> <self_reported_count>'");
      RelevanceCase c;
      c.case_id = std::string(t[1]);
      if (!detail::parse_number(t[2], c.task_year)) fail("invalid task year");
      if (!detail::parse_number(t[3], c.self_reported_count)) fail("invalid self-reported count");
      if (!ids.insert(c.case_id).second) fail("duplicate case id '" + c.case_id + "'");
      cases.push_back(std::move(c));
      state = 1;
    } else if (state == 1) {
      if (!view.starts_with("relevant:")) fail("expected 'relevant:'");
      cases.back().relevant = id_list(view.substr(9));
      state = 2;
    } else {
      if (!view.starts_with("baseline:")) fail("expected 'baseline:'");
      cases.back().baseline_retrieved = id_list(view.substr(9));
      cases.back().normalize();
      state = 0;
    }
  }
  if (state != 0) throw Error(ErrorKind::Parse, "cases file ends inside a case block");
  return cases;
}

std::vector<RelevanceCase> load_cases(const std::string& path) {
  auto in = detail::open_input(path);
  return read_cases(in);
}

void write_cases(std::ostream& out, std::span<const RelevanceCase> cases) {
  auto write_ids = [&](const std::vector<std::string>& ids) {
    for (const auto& id : ids) out << ' ' << id;
    out << '\n';
  };
  for (const auto& c : cases) {
    out << "case " << c.case_id << ' ' << c.task_year << ' ' << c.self_reported_count << '\n';
    out << "relevant:";
    write_ids(c.relevant);
    out << "baseline:";
    write_ids(c.baseline_retrieved);
  }
}

ExpandPredicate expand_relevant_only(const CitationGraph& graph,
                                     std::span<const RelevanceCase> cases) {
  std::vector<DocIndex> docs;
  for (const auto& c : cases) {
    for (const auto& id : c.relevant) {
      if (auto d = graph.find(id)) docs.push_back(*d);
    }
  }
  return expand_containing(std::move(docs));
}

void BetaGrid::validate() const {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "beta grid is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta values must be > 0");
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "beta grid must be strictly increasing");
    }
  }
}

double f_beta(double precision, double recall, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be > 0");
  if (!(precision >= 0.0 && precision <= 1.0 && recall >= 0.0 && recall <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "precision and recall must lie in [0, 1]");
  }
  const double b2 = beta * beta;
  const double denominator = b2 * precision + recall;
  if (denominator == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denominator;
}

ResolvedCase resolve_case(const ClusterTree& tree, const RelevanceCase& c) {
  ResolvedCase out;
  out.case_id = c.case_id;
  for (const auto& id : c.relevant) {
    auto d = tree.find_doc(id);
    if (!d) {
      throw Error(ErrorKind::Data,
                  "case '" + c.case_id + "': relevant document '" + id + "' is not in the tree");
    }
    out.relevant.push_back(*d);
  }
  std::sort(out.relevant.begin(), out.relevant.end());
  out.relevant.erase(std::unique(out.relevant.begin(), out.relevant.end()), out.relevant.end());
  if (out.relevant.empty()) {
    throw Error(ErrorKind::Data, "case '" + c.case_id + "' has no relevant documents");
  }
  return out;
}

std::size_t relevant_in(const ClusterNode& node, const ResolvedCase& c) {
  std::size_t count = 0;
  auto a = node.docs.begin();
  auto b = c.relevant.begin();
  while (a != node.docs.end() && b != c.relevant.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

PrecisionRecall cluster_prf(const ClusterNode& node, const ResolvedCase& c) {
  const auto hits = static_cast<double>(relevant_in(node, c));
  return {hits / static_cast<double>(node.docs.size()), hits / static_cast<double>(c.relevant.size())};
}

SelectionOutcome greedy_select(const ClusterTree& tree, const ResolvedCase& c, double beta) {
  auto score = [&](const ClusterNode& n) {
    auto pr = cluster_prf(n, c);
    return f_beta(pr.precision, pr.recall, beta);
  };
  if (relevant_in(tree.root(), c) != c.relevant.size()) {
    throw Error(ErrorKind::Data, "case '" + c.case_id + "': relevant documents missing from the tree root");
  }

  const ClusterNode* current = &tree.root();
  double current_score = score(*current);
  for (;;) {
    const ClusterNode* best = nullptr;
    double best_score = current_score;
    for (auto child : current->children) {
      const auto& n = tree.node(child);
      const double s = score(n);
      if (s > best_score) {
        best = &n;
        best_score = s;
      }
    }
    if (!best) break;
    current = best;
    current_score = best_score;
  }

  SelectionOutcome out;
  out.case_id = c.case_id;
  out.beta = beta;
  out.node_id = current->id;
  out.level = current->level;
  out.retrieved_count = current->docs.size();
  out.relevant_retrieved_count = relevant_in(*current, c);
  const auto pr = cluster_prf(*current, c);
  out.precision = pr.precision;
  out.recall = pr.recall;
  out.f_score = current_score;
  return out;
}

SelectionOutcome greedy_select(const ClusterTree& tree, const RelevanceCase& c, double beta) {
  return greedy_select(tree, resolve_case(tree, c), beta);
}

std::vector<SelectionOutcome> run_grid(const ClusterTree& tree, const RelevanceCase& c,
                                       const BetaGrid& grid) {
  grid.validate();
  const auto resolved = resolve_case(tree, c);
  std::vector<SelectionOutcome> out;
  out.reserve(grid.values.size());
  for (double beta : grid.values) out.push_back(greedy_select(tree, resolved, beta));
  return out;
}

}  // namespace ccir
