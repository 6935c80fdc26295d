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

#include "ccir/corpus.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include "ccir/error.hpp"
#include "text_io.hpp"

namespace ccir {

CitationGraph CitationGraph::from_records(
    std::vector<Document> documents,
    std::span<const std::pair<std::string, std::string>> edges) {
  CitationGraph g;
  std::sort(documents.begin(), documents.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < documents.size(); ++i) {
    if (documents[i].id == documents[i - 1].id) {
      throw Error(ErrorKind::Data, "duplicate document id '" + documents[i].id + "'");
    }
  }
  g.documents_ = std::move(documents);
  g.index_.reserve(g.documents_.size());
  for (std::size_t i = 0; i < g.documents_.size(); ++i) {
    g.index_.emplace(g.documents_[i].id, static_cast<DocIndex>(i));
  }

  std::vector<std::pair<DocIndex, DocIndex>> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    auto ia = g.find(a);
    auto ib = g.find(b);
    if (!ia || !ib) {
      throw Error(ErrorKind::Data, "edge endpoint not among documents: '" + (ia ? b : a) + "'");
    }
    if (*ia == *ib) continue;
    arcs.emplace_back(*ia, *ib);
    arcs.emplace_back(*ib, *ia);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  g.offsets_.assign(g.documents_.size() + 1, 0);
  for (const auto& arc : arcs) ++g.offsets_[arc.first + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbors_.reserve(arcs.size());
  for (const auto& arc : arcs) g.neighbors_.push_back(arc.second);
  return g;
}

std::optional<DocIndex> CitationGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool CitationGraph::has_edge(DocIndex a, DocIndex b) const {
  auto n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

std::vector<std::pair<DocIndex, DocIndex>> CitationGraph::edges() const {
  std::vector<std::pair<DocIndex, DocIndex>> out;
  out.reserve(edge_count());
  for (DocIndex i = 0; i < documents_.size(); ++i) {
    for (DocIndex j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

bool CitationGraph::same_documents(const CitationGraph& other) const {
  return std::equal(documents_.begin(), documents_.end(), other.documents_.begin(),
                    other.documents_.end(), [](const Document& a, const Document& b) {
                      return a.id == b.id && a.year == b.year;
                    });
}

namespace {

[[noreturn]] void parse_error(const char* what, std::size_t line, const std::string& detail) {
  throw Error(ErrorKind::Parse,
              std::string(what) + " line " + std::to_string(line) + ": " + detail);
}

bool valid_id(std::string_view id) {
  return !id.empty() && id.find_first_of(" \t") == std::string_view::npos;
}

}  // namespace

CitationGraph load_corpus(std::istream& documents_source, std::istream& edges_source) {
  std::vector<Document> documents;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(documents_source, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty() || line[0] == '#' || detail::is_blank(line)) continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 2) parse_error("documents", line_no, "expected <id><TAB><year>");
    if (!valid_id(fields[0])) parse_error("documents", line_no, "invalid document id");
    int year = 0;
    if (!detail::parse_number(fields[1], year)) {
      parse_error("documents", line_no, "missing or invalid year '" + std::string(fields[1]) + "'");
    }
    documents.push_back({std::string(fields[0]), year});
  }

  std::vector<std::pair<std::string, std::string>> edges;
  line_no = 0;
  while (std::getline(edges_source, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty() || line[0] == '#' || detail::is_blank(line)) continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 2 || !valid_id(fields[0]) || !valid_id(fields[1])) {
      parse_error("edges", line_no, "expected <id><TAB><id>");
    }
    edges.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  return CitationGraph::from_records(std::move(documents), edges);
}

CitationGraph load_corpus_files(const std::string& documents_path, const std::string& edges_path) {
  auto docs = detail::open_input(documents_path);
  auto edges = detail::open_input(edges_path);
  return load_corpus(docs, edges);
}

void write_documents(std::ostream& out, const CitationGraph& graph) {
  for (const auto& d : graph.documents()) out << d.id << '\t' << d.year << '\n';
}

void write_edges(std::ostream& out, const CitationGraph& graph) {
  for (auto [a, b] : graph.edges()) out << graph.id(a) << '\t' << graph.id(b) << '\n';
}

YearWindow year_window(int task_year, int span) {
  if (span < 1) throw Error(ErrorKind::InvalidArgument, "year window span must be >= 1");
  const int max_year = task_year - 1;
  return {max_year - span + 1, max_year};
}

CitationGraph filter_by_year(const CitationGraph& graph, YearWindow window) {
  if (window.min_year > window.max_year) {
    throw Error(ErrorKind::InvalidArgument, "year window min_year exceeds max_year");
  }
  std::vector<Document> kept;
  for (const auto& d : graph.documents()) {
    if (window.contains(d.year)) kept.push_back(d);
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [a, b] : graph.edges()) {
    if (window.contains(graph.year(a)) && window.contains(graph.year(b))) {
      edges.emplace_back(graph.id(a), graph.id(b));
    }
  }
  return CitationGraph::from_records(std::move(kept), edges);
}

}  // namespace ccir
