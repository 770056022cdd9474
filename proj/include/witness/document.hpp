// Copyright 2026 The witness authors
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

#ifndef WITNESS_DOCUMENT_HPP
#define WITNESS_DOCUMENT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "witness/blame.hpp"
#include "witness/graph.hpp"
#include "witness/search.hpp"

namespace witness {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

struct WitnessSummary {
  std::string call;
  std::vector<std::string> args;
  std::string stuck_term;
  Span stuck_span;
  std::string conflict;
  std::vector<std::string> partial_input_types;
  std::uint64_t seed = 0;
  std::uint64_t trace_length = 0;
  friend bool operator==(const WitnessSummary&, const WitnessSummary&) = default;
};

struct ReportSummary {
  Classification classification = Classification::Safe;
  std::uint64_t tests_passed = 0;
  std::uint64_t runtime_errors = 0;
  std::uint64_t traces_run = 0;
  double elapsed_seconds = 0.0;
  std::string detail;
  Span span;
  std::vector<WitnessSummary> witnesses;
  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

/// Everything a client needs to explore one check: the graph and blame
/// belong to the first witness.
struct TraceDocument {
  std::string schema_version = kSchemaVersion;
  std::string program;
  std::string entry;
  SearchParams params;
  ReportSummary report;
  std::optional<ReductionGraph> graph;
  std::vector<NodeId> jump_path;
  std::optional<BlameReport> blame;
};

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ReportSummary summarize(const SearchReport& r);

/// Parses `src`, runs the search on `entry` and assembles the document.
/// Throws ParseFailure, or std::invalid_argument for an unknown entry.
TraceDocument analyze(const SourceFile& src, const std::string& entry, const SearchParams& params);

Json to_json(const TraceDocument& doc);
Json to_json(const ReductionGraph& g);
Json to_json(const VisState& s);
Json to_json(const ParseError& e, const SourceFile& src);
std::string serialize(const TraceDocument& doc);

/// Throws DocumentError. In strict mode unknown fields are rejected;
/// otherwise they are ignored. Node expressions are not part of the
/// document, so nodes of a parsed graph carry only their labels.
TraceDocument parse_document(const std::string& text, bool strict = true);
TraceDocument document_from_json(const Json& j, bool strict = true);
ReductionGraph graph_from_json(const Json& j, bool strict = true);
VisState vis_state_from_json(const Json& j, bool strict = true);

}  // namespace witness

#endif  // WITNESS_DOCUMENT_HPP
