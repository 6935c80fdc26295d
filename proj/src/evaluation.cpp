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

#include "ccir/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "ccir/error.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "text_io.hpp"

namespace ccir {

SetComparison compare_counts(std::size_t ccir_size, std::size_t baseline_size, std::size_t intersection) {
  if (baseline_size == 0) throw Error(ErrorKind::InvalidArgument, "baseline set is empty");
  if (ccir_size == 0) throw Error(ErrorKind::InvalidArgument, "retrieved set is empty");
  if (intersection > std::min(ccir_size, baseline_size)) {
    throw Error(ErrorKind::InvalidArgument, "intersection larger than one of the sets");
  }
  SetComparison s;
  s.intersection = intersection;
  s.intersection_ccir = static_cast<double>(intersection) / static_cast<double>(ccir_size);
  s.intersection_baseline = static_cast<double>(intersection) / static_cast<double>(baseline_size);
  s.size_ratio = static_cast<double>(ccir_size) / static_cast<double>(baseline_size);
  return s;
}

SetComparison compare_sets(std::span<const std::string> ccir_set,
                           std::span<const std::string> baseline_set) {
  std::size_t common = 0;
  auto a = ccir_set.begin();
  auto b = baseline_set.begin();
  while (a != ccir_set.end() && b != baseline_set.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  return compare_counts(ccir_set.size(), baseline_set.size(), common);
}

double f_score_difference(double ccir_f, double baseline_f) { return ccir_f - baseline_f; }

BaselineScores baseline_prf(const RelevanceCase& c, double beta) {
  c.validate();
  BaselineScores s;
  s.precision = static_cast<double>(c.relevant.size()) / static_cast<double>(c.baseline_retrieved.size());
  s.recall = 1.0;
  s.f_score = f_beta(s.precision, s.recall, beta);
  return s;
}

bool case_filter(const RelevanceCase& c, std::size_t our_baseline_size) {
  if (our_baseline_size < 1) throw Error(ErrorKind::InvalidArgument, "baseline size must be >= 1");
  if (c.relevant.size() < 10) return false;
  const double ratio =
      static_cast<double>(c.self_reported_count) / static_cast<double>(our_baseline_size);
  return ratio >= 0.1 && ratio <= 10.0;
}

EvaluationRow evaluate_outcome(const ClusterTree& tree, const RelevanceCase& c,
                               const SelectionOutcome& outcome) {
  const auto& node = tree.node_lookup(outcome.node_id);
  std::vector<std::string> retrieved;
  retrieved.reserve(node.docs.size());
  for (auto d : node.docs) retrieved.push_back(tree.doc_ids()[d]);
  std::sort(retrieved.begin(), retrieved.end());

  const auto sets = compare_sets(retrieved, c.baseline_retrieved);
  const auto base = baseline_prf(c, outcome.beta);
  EvaluationRow row;
  row.outcome = outcome;
  row.metrics.intersection_ccir = sets.intersection_ccir;
  row.metrics.intersection_baseline = sets.intersection_baseline;
  row.metrics.size_ratio = sets.size_ratio;
  row.metrics.baseline_precision = base.precision;
  row.metrics.baseline_recall = base.recall;
  row.metrics.baseline_f = base.f_score;
  row.metrics.f_score_difference = f_score_difference(outcome.f_score, base.f_score);
  return row;
}

SimulationResult simulate(const ClusterTree& tree, std::span<const RelevanceCase> cases,
                          const BetaGrid& grid, unsigned jobs) {
  grid.validate();
  SimulationResult result;
  result.cases_total = cases.size();

  std::vector<const RelevanceCase*> kept;
  for (const auto& c : cases) {
    if (!case_filter(c, c.baseline_retrieved.size())) {
      ++result.filtered_out;
      continue;
    }
    const auto missing = std::find_if(c.relevant.begin(), c.relevant.end(),
                                      [&](const std::string& id) { return !tree.find_doc(id); });
    if (missing != c.relevant.end()) {
      ++result.skipped;
      result.warnings.push_back("case '" + c.case_id + "' skipped: relevant document '" + *missing +
                                "' is not in the tree");
      continue;
    }
    kept.push_back(&c);
  }

  const std::size_t width = grid.values.size();
  std::vector<EvaluationRow> rows(kept.size() * width);
  std::vector<ResolvedCase> resolved(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) resolved[i] = resolve_case(tree, *kept[i]);
  detail::parallel_for(rows.size(), jobs, [&](std::size_t k) {
    const auto i = k / width;
    const auto outcome = greedy_select(tree, resolved[i], grid.values[k % width]);
    rows[k] = evaluate_outcome(tree, *kept[i], outcome);
  });
  result.rows = std::move(rows);
  return result;
}

Dispersion describe(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "cannot summarise an empty sample");
  std::sort(values.begin(), values.end());
  auto median_of = [&](std::size_t first, std::size_t count) {
    const auto mid = first + count / 2;
    return count % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  };
  const std::size_t n = values.size();
  const std::size_t half = (n + 1) / 2;
  Dispersion d;
  d.min = values.front();
  d.max = values.back();
  d.median = median_of(0, n);
  d.q1 = median_of(0, half);
  d.q3 = median_of(n - half, half);
  return d;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names{
      "level",      "retrieved",          "relevant_retrieved", "precision",
      "recall",     "f_score",            "baseline_precision", "baseline_f",
      "f_diff",     "inter_ccir",         "inter_baseline",     "size_ratio"};
  return names;
}

double metric_value(const EvaluationRow& row, std::string_view metric) {
  const auto& o = row.outcome;
  const auto& m = row.metrics;
  if (metric == "level") return o.level;
  if (metric == "retrieved") return static_cast<double>(o.retrieved_count);
  if (metric == "relevant_retrieved") return static_cast<double>(o.relevant_retrieved_count);
  if (metric == "precision") return o.precision;
  if (metric == "recall") return o.recall;
  if (metric == "f_score") return o.f_score;
  if (metric == "baseline_precision") return m.baseline_precision;
  if (metric == "baseline_f") return m.baseline_f;
  if (metric == "f_diff") return m.f_score_difference;
  if (metric == "inter_ccir") return m.intersection_ccir;
  if (metric == "inter_baseline") return m.intersection_baseline;
  if (metric == "size_ratio") return m.size_ratio;
  throw Error(ErrorKind::InvalidArgument, "unknown metric '" + std::string(metric) + "'");
}

std::vector<BetaGroup> aggregate(std::span<const EvaluationRow> rows) {
  if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "no outcomes to aggregate");
  std::map<double, std::vector<EvaluationRow>> by_beta;
  for (const auto& r : rows) by_beta[r.outcome.beta].push_back(r);

  std::vector<BetaGroup> groups;
  for (auto& [beta, group_rows] : by_beta) {
    BetaGroup g;
    g.beta = beta;
    g.rows = std::move(group_rows);
    std::stable_sort(g.rows.begin(), g.rows.end(), [](const auto& a, const auto& b) {
      return a.outcome.case_id < b.outcome.case_id;
    });
    for (const auto& name : metric_names()) {
      std::vector<double> values;
      values.reserve(g.rows.size());
      for (const auto& r : g.rows) values.push_back(metric_value(r, name));
      g.metrics.emplace_back(name, describe(std::move(values)));
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

namespace {

constexpr const char* kCsvHeader =
    "case_id,beta,node_id,level,retrieved,relevant_retrieved,precision,recall,f_score,"
    "baseline_precision,baseline_f,f_diff,inter_ccir,inter_baseline,size_ratio";

}  // namespace

void write_outcomes_csv(std::ostream& out, std::span<const EvaluationRow> rows) {
  using detail::format_double;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& o = r.outcome;
    const auto& m = r.metrics;
    out << o.case_id << ',' << format_double(o.beta) << ',' << o.node_id << ',' << o.level << ','
        << o.retrieved_count << ',' << o.relevant_retrieved_count << ','
        << format_double(o.precision) << ',' << format_double(o.recall) << ','
        << format_double(o.f_score) << ',' << format_double(m.baseline_precision) << ','
        << format_double(m.baseline_f) << ',' << format_double(m.f_score_difference) << ','
        << format_double(m.intersection_ccir) << ',' << format_double(m.intersection_baseline)
        << ',' << format_double(m.size_ratio) << '\n';
  }
}

std::vector<EvaluationRow> read_outcomes_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "outcomes line " + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "outcomes file is empty");
  ++line_no;
  detail::strip_cr(line);
  if (line != kCsvHeader) fail("unexpected header");

  std::vector<EvaluationRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty()) continue;
    auto f = detail::split(line, ',');
    if (f.size() != 15) fail("expected 15 columns");
    EvaluationRow r;
    auto& o = r.outcome;
    auto& m = r.metrics;
    o.case_id = std::string(f[0]);
    o.node_id = std::string(f[2]);
    bool ok = detail::parse_number(f[1], o.beta) && detail::parse_number(f[3], o.level) &&
              detail::parse_number(f[4], o.retrieved_count) &&
              detail::parse_number(f[5], o.relevant_retrieved_count) &&
              detail::parse_number(f[6], o.precision) && detail::parse_number(f[7], o.recall) &&
              detail::parse_number(f[8], o.f_score) &&
              detail::parse_number(f[9], m.baseline_precision) &&
              detail::parse_number(f[10], m.baseline_f) &&
              detail::parse_number(f[11], m.f_score_difference) &&
              detail::parse_number(f[12], m.intersection_ccir) &&
              detail::parse_number(f[13], m.intersection_baseline) &&
              detail::parse_number(f[14], m.size_ratio);
    if (!ok) fail("malformed number");
    m.baseline_recall = 1.0;
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_json(std::ostream& out, std::span<const BetaGroup> groups, std::size_t row_count,
                        const std::optional<RunCounts>& counts) {
  nlohmann::ordered_json doc;
  if (counts) {
    doc["cases_total"] = counts->cases_total;
    doc["filtered_out"] = counts->filtered_out;
    doc["skipped"] = counts->skipped;
  }
  doc["rows"] = row_count;
  auto& jgroups = doc["groups"] = nlohmann::ordered_json::array();
  for (const auto& g : groups) {
    nlohmann::ordered_json jg;
    jg["beta"] = g.beta;
    jg["cases"] = g.rows.size();
    auto& jm = jg["metrics"] = nlohmann::ordered_json::object();
    for (const auto& [name, d] : g.metrics) {
      jm[name] = {{"min", d.min}, {"q1", d.q1}, {"median", d.median}, {"q3", d.q3}, {"max", d.max}};
    }
    auto& levels = jg["levels"] = nlohmann::ordered_json::array();
    for (const auto& r : g.rows) {
      levels.push_back({{"case_id", r.outcome.case_id}, {"level", r.outcome.level}});
    }
    jgroups.push_back(std::move(jg));
  }
  out << doc.dump(2) << '\n';
}

std::string render_report(std::span<const BetaGroup> groups) {
  std::string text;
  char buf[256];
  for (const auto& g : groups) {
    std::snprintf(buf, sizeof buf, "beta = %g  (%zu cases)\n", g.beta, g.rows.size());
    text += buf;
    std::snprintf(buf, sizeof buf, "  %-20s %10s %10s %10s %10s %10s\n", "metric", "min", "q1",
                  "median", "q3", "max");
    text += buf;
    for (const auto& [name, d] : g.metrics) {
      std::snprintf(buf, sizeof buf, "  %-20s %10.2f %10.2f %10.2f %10.2f %10.2f\n", name.c_str(),
                    d.min, d.q1, d.median, d.q3, d.max);
      text += buf;
    }
    text += '\n';
  }
  return text;
}

}  // namespace ccir
