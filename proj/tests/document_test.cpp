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

#include <gtest/gtest.h>

#include "test_programs.hpp"
#include "witness/document.hpp"

namespace witness {
namespace {

TraceDocument fac_document() {
  SearchParams p;
  TraceDocument doc = analyze(testing::program_source("fac"), "", p);
  doc.report.elapsed_seconds = 0.0;
  return doc;
}

TEST(Document, AnalyzeFac) {
  TraceDocument doc = fac_document();
  EXPECT_EQ(doc.entry, "fac");
  EXPECT_EQ(doc.report.classification, Classification::WitnessFound);
  ASSERT_TRUE(doc.graph.has_value());
  EXPECT_EQ(doc.jump_path.size(), 4u);
  EXPECT_EQ(doc.graph->node(doc.jump_path.back()).label, "1 * true");
  ASSERT_TRUE(doc.blame.has_value());
  EXPECT_EQ(doc.blame->sources.size(), 2u);
  ASSERT_FALSE(doc.report.witnesses.empty());
  EXPECT_EQ(doc.report.witnesses[0].stuck_term, "1 * true");
}

TEST(Document, SafeProgramHasNoGraph) {
  SearchParams p;
  p.num_traces = 50;
  TraceDocument doc = analyze(testing::program_source("id"), "", p);
  EXPECT_EQ(doc.report.classification, Classification::Safe);
  EXPECT_FALSE(doc.graph.has_value());
  EXPECT_TRUE(doc.jump_path.empty());
  std::string text = serialize(doc);
  EXPECT_EQ(serialize(parse_document(text)), text);
}

TEST(Document, RoundTripIsByteIdentical) {
  for (const char* name : {"fac", "sqsum", "sumlist", "append", "wwhile", "palindrome"}) {
    SearchParams p;
    TraceDocument doc = analyze(testing::program_source(name), "", p);
    std::string text = serialize(doc);
    TraceDocument back = parse_document(text);
    EXPECT_EQ(serialize(back), text) << name;
    EXPECT_EQ(back.report, doc.report);
    EXPECT_EQ(back.params, doc.params);
    EXPECT_EQ(back.jump_path, doc.jump_path);
    ASSERT_TRUE(back.graph.has_value());
    EXPECT_EQ(back.graph->main_path(), doc.graph->main_path());
    EXPECT_EQ(jump_compress(*back.graph), doc.jump_path);
  }
}

TEST(Document, ParsedGraphSupportsTraversal) {
  TraceDocument doc = parse_document(serialize(fac_document()));
  const ReductionGraph& g = *doc.graph;
  VisState s = initial_state(g);
  s = jump_forward(s, g, s.focus).state;
  EXPECT_EQ(g.node(s.focus).label, "1 * fac 0");
  ASSERT_FALSE(g.node(s.focus).calls.empty());
  s = step_into(s, g, s.focus, g.node(s.focus).calls.front().node).state;
  EXPECT_EQ(s.chains.size(), 2u);
}

TEST(Document, SchemaFieldOrderIsFixed) {
  Json j = to_json(fac_document());
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "program", "entry", "params", "report",
                                            "graph", "jump_path", "blame"}));
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
}

TEST(Document, StrictModeRejectsUnknownFields) {
  Json j = to_json(fac_document());
  j["extra"] = 1;
  EXPECT_THROW(document_from_json(j, true), DocumentError);
  EXPECT_NO_THROW(document_from_json(j, false));
  Json k = to_json(fac_document());
  k["graph"]["nodes"][0]["colour"] = "red";
  EXPECT_THROW(document_from_json(k, true), DocumentError);
}

TEST(Document, RejectsMissingAndMalformed) {
  Json j = to_json(fac_document());
  j.erase("report");
  EXPECT_THROW(document_from_json(j, false), DocumentError);
  EXPECT_THROW(parse_document("{not json"), DocumentError);
  Json v = to_json(fac_document());
  v["schema_version"] = "2.0.0";
  EXPECT_THROW(document_from_json(v, false), DocumentError);
  Json c = to_json(fac_document());
  c["report"]["classification"] = "maybe";
  EXPECT_THROW(document_from_json(c), DocumentError);
  Json n = to_json(fac_document());
  n["jump_path"].push_back(9999);
  EXPECT_THROW(document_from_json(n), DocumentError);
  Json e = to_json(fac_document());
  e["graph"]["edges"][0]["to"] = 9999;
  EXPECT_THROW(document_from_json(e), DocumentError);
  Json h = to_json(fac_document());
  h["graph"]["nodes"][0]["highlight"] = Json::array({0, 500});
  EXPECT_THROW(document_from_json(h), DocumentError);
}

TEST(Document, VisStateRoundTrip) {
  const TraceDocument doc = fac_document();
  VisState s = initial_state(*doc.graph);
  s = step_forward(s, *doc.graph, s.focus).state;
  EXPECT_EQ(vis_state_from_json(to_json(s)), s);
  EXPECT_THROW(vis_state_from_json(Json{{"chains", 1}, {"focus", 0}}), DocumentError);
}

TEST(Document, ParseErrorJson) {
  SourceFile src("bad.ml", "let f x =\n  x +\n");
  try {
    parse_program(src);
    FAIL() << "expected a parse failure";
  } catch (const ParseFailure& f) {
    Json j = to_json(f.error(), src);
    EXPECT_EQ(j["error"], "parse_error");
    EXPECT_TRUE(j["line"].is_number());
    EXPECT_TRUE(j["expected"].is_array());
    EXPECT_FALSE(j["message"].get<std::string>().empty());
  }
}

}  // namespace
}  // namespace witness
