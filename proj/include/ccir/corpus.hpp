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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ccir {

// Dense index of a document inside a CitationGraph. Indices follow ascending
// lexicographic order of the document ids, so "smallest member" comparisons
// on indices agree with comparisons on ids.
using DocIndex = std::uint32_t;

struct Document {
  std::string id;
  int year = 0;
};

struct YearWindow {
  int min_year = 0;
  int max_year = 0;

  bool contains(int year) const { return min_year <= year && year <= max_year; }
  friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

// Immutable undirected citation graph without self-loops or multi-edges.
class CitationGraph {
 public:
  CitationGraph() = default;

  // Builds a graph from documents and id-pair edges. Direction is discarded,
  // duplicate edges collapse and self-citations are dropped. Throws
  // ccir::Error on duplicate document ids or unknown edge endpoints.
  static CitationGraph from_records(std::vector<Document> documents,
                                    std::span<const std::pair<std::string, std::string>> edges);

  std::size_t document_count() const { return documents_.size(); }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  bool empty() const { return documents_.empty(); }

  const Document& document(DocIndex i) const { return documents_[i]; }
  const std::vector<Document>& documents() const { return documents_; }
  const std::string& id(DocIndex i) const { return documents_[i].id; }
  int year(DocIndex i) const { return documents_[i].year; }

  std::optional<DocIndex> find(std::string_view id) const;

  // Sorted neighbor indices of a document.
  std::span<const DocIndex> neighbors(DocIndex i) const {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  std::size_t degree(DocIndex i) const { return offsets_[i + 1] - offsets_[i]; }
  bool has_edge(DocIndex a, DocIndex b) const;

  // Every edge once, as (smaller index, larger index), in ascending order.
  std::vector<std::pair<DocIndex, DocIndex>> edges() const;

  friend bool operator==(const CitationGraph& a, const CitationGraph& b) {
    return a.documents_.size() == b.documents_.size() && a.neighbors_ == b.neighbors_ &&
           a.offsets_ == b.offsets_ && a.same_documents(b);
  }

 private:
  bool same_documents(const CitationGraph& other) const;

  std::vector<Document> documents_;
  std::unordered_map<std::string, DocIndex> index_;
  std::vector<std::size_t> offsets_{0};
  std::vector<DocIndex> neighbors_;
};

// Parses the tab-separated documents and edges formats. Line numbers are
// reported in parse errors.
CitationGraph load_corpus(std::istream& documents_source, std::istream& edges_source);
CitationGraph load_corpus_files(const std::string& documents_path, const std::string& edges_path);

void write_documents(std::ostream& out, const CitationGraph& graph);
void write_edges(std::ostream& out, const CitationGraph& graph);

// Publication window for a task: the `span` years ending the year before the
// task year, both ends inclusive.
YearWindow year_window(int task_year, int span = 11);

CitationGraph filter_by_year(const CitationGraph& graph, YearWindow window);

}  // namespace ccir
