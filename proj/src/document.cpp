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

#include "witness/document.hpp"

#include <algorithm>
#include <initializer_list>

namespace witness {

namespace {

Json span_json(const Span& s) {
  if (!s.valid()) return nullptr;
  return Json{{"begin", s.begin}, {"end", s.end}};
}

Json path_json(const Path& p) {
  Json out = Json::array();
  for (auto i : p) out.push_back(i);
  return out;
}

Json params_json(const SearchParams& p) {
  return Json{{"num_traces", p.num_traces},       {"step_limit", p.step_limit},
              {"timeout_seconds", p.timeout_seconds}, {"seed", p.seed},
              {"exhaustive", p.exhaustive},       {"jobs", p.jobs}};
}

Json witness_json(const WitnessSummary& w) {
  return Json{{"call", w.call},
              {"args", w.args},
              {"stuck_term", w.stuck_term},
              {"stuck_span", span_json(w.stuck_span)},
              {"conflict", w.conflict},
              {"partial_input_types", w.partial_input_types},
              {"seed", w.seed},
              {"trace_length", w.trace_length}};
}

Json report_json(const ReportSummary& r) {
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_json(w));
  return Json{{"classification", classification_name(r.classification)},
              {"tests_passed", r.tests_passed},
              {"runtime_errors", r.runtime_errors},
              {"traces_run", r.traces_run},
              {"elapsed_seconds", r.elapsed_seconds},
              {"detail", r.detail},
              {"span", span_json(r.span)},
              {"witnesses", std::move(ws)}};
}

Json blame_json(const BlameReport& b) {
  Json sources = Json::array();
  Json all = Json::array();
  for (const Span& s : b.sources) sources.push_back(span_json(s));
  for (const Span& s : b.all) all.push_back(span_json(s));
  return Json{{"sink", span_json(b.sink)}, {"sources", std::move(sources)}, {"all", std::move(all)}};
}

// Reading

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw DocumentError(where + ": " + what);
}

const Json& object(const Json& j, const std::string& where, bool strict,
                   std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const char* k : keys)
    if (!j.contains(k)) fail(where, std::string("missing field '") + k + "'");
  if (strict) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; });
      if (!known) fail(where, "unknown field '" + it.key() + "'");
    }
  }
  return j;
}

std::uint64_t read_u64(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::uint32_t read_u32(const Json& j, const std::string& where) {
  std::uint64_t v = read_u64(j, where);
  if (v > 0xffffffffu) fail(where, "integer out of range");
  return static_cast<std::uint32_t>(v);
}

double read_double(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

bool read_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected a boolean");
  return j.get<bool>();
}

std::string read_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::vector<std::string> read_strings(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  for (const Json& x : array(j, where)) out.push_back(read_string(x, where));
  return out;
}

Span read_span(const Json& j, const std::string& where, bool strict) {
  if (j.is_null()) return Span{};
  object(j, where, strict, {"begin", "end"});
  Span s{read_u32(j["begin"], where + ".begin"), read_u32(j["end"], where + ".end")};
  if (!s.valid() || s.end < s.begin) fail(where, "invalid span");
  return s;
}

Path read_path(const Json& j, const std::string& where) {
  Path p;
  for (const Json& x : array(j, where)) p.push_back(read_u32(x, where));
  return p;
}

template <typename E, typename NameFn>
E read_enum(const Json& j, const std::string& where, std::initializer_list<E> values, NameFn name) {
  std::string s = read_string(j, where);
  for (E v : values)
    if (s == name(v)) return v;
  fail(where, "unknown value '" + s + "'");
}

SearchParams read_params(const Json& j, bool strict) {
  const std::string w = "params";
  object(j, w, strict, {"num_traces", "step_limit", "timeout_seconds", "seed", "exhaustive", "jobs"});
  SearchParams p;
  p.num_traces = read_u64(j["num_traces"], w + ".num_traces");
  p.step_limit = read_u64(j["step_limit"], w + ".step_limit");
  p.timeout_seconds = read_double(j["timeout_seconds"], w + ".timeout_seconds");
  p.seed = read_u64(j["seed"], w + ".seed");
  p.exhaustive = read_bool(j["exhaustive"], w + ".exhaustive");
  p.jobs = read_u32(j["jobs"], w + ".jobs");
  return p;
}

WitnessSummary read_witness(const Json& j, const std::string& w, bool strict) {
  object(j, w, strict,
         {"call", "args", "stuck_term", "stuck_span", "conflict", "partial_input_types", "seed",
          "trace_length"});
  WitnessSummary s;
  s.call = read_string(j["call"], w + ".call");
  s.args = read_strings(j["args"], w + ".args");
  s.stuck_term = read_string(j["stuck_term"], w + ".stuck_term");
  s.stuck_span = read_span(j["stuck_span"], w + ".stuck_span", strict);
  s.conflict = read_string(j["conflict"], w + ".conflict");
  s.partial_input_types = read_strings(j["partial_input_types"], w + ".partial_input_types");
  s.seed = read_u64(j["seed"], w + ".seed");
  s.trace_length = read_u64(j["trace_length"], w + ".trace_length");
  return s;
}

ReportSummary read_report(const Json& j, bool strict) {
  const std::string w = "report";
  object(j, w, strict,
         {"classification", "tests_passed", "runtime_errors", "traces_run", "elapsed_seconds",
          "detail", "span", "witnesses"});
  ReportSummary r;
  r.classification = read_enum<Classification>(
      j["classification"], w + ".classification",
      {Classification::WitnessFound, Classification::UnboundVariable,
       Classification::InfiniteRecursion, Classification::Safe, Classification::Timeout,
       Classification::Ambiguous},
      classification_name);
  r.tests_passed = read_u64(j["tests_passed"], w + ".tests_passed");
  r.runtime_errors = read_u64(j["runtime_errors"], w + ".runtime_errors");
  r.traces_run = read_u64(j["traces_run"], w + ".traces_run");
  r.elapsed_seconds = read_double(j["elapsed_seconds"], w + ".elapsed_seconds");
  r.detail = read_string(j["detail"], w + ".detail");
  r.span = read_span(j["span"], w + ".span", strict);
  const Json& ws = array(j["witnesses"], w + ".witnesses");
  for (std::size_t i = 0; i < ws.size(); ++i)
    r.witnesses.push_back(read_witness(ws[i], w + ".witnesses[" + std::to_string(i) + "]", strict));
  return r;
}

BlameReport read_blame(const Json& j, bool strict) {
  object(j, "blame", strict, {"sink", "sources", "all"});
  BlameReport b;
  b.sink = read_span(j["sink"], "blame.sink", strict);
  for (const Json& s : array(j["sources"], "blame.sources"))
    b.sources.push_back(read_span(s, "blame.sources", strict));
  for (const Json& s : array(j["all"], "blame.all")) b.all.push_back(read_span(s, "blame.all", strict));
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Writing

Json to_json(const ReductionGraph& g) {
  Json nodes = Json::array();
  for (const GraphNode& n : g.nodes()) {
    Json calls = Json::array();
    for (const CallSite& c : n.calls) calls.push_back(Json{{"path", path_json(c.path)}, {"node", c.node}});
    nodes.push_back(Json{{"id", n.id},
                         {"path", path_json(n.path)},
                         {"version", n.version},
                         {"label", n.label},
                         {"highlight", Json::array({n.highlight_begin, n.highlight_end})},
                         {"span", span_json(n.span)},
                         {"stuck", n.stuck},
                         {"value", n.value},
                         {"calls", std::move(calls)}});
  }
  Json edges = Json::array();
  for (const GraphEdge& e : g.edges()) {
    edges.push_back(Json{{"from", e.from},
                         {"to", e.to},
                         {"kind", edge_kind_name(e.kind)},
                         {"step", e.step},
                         {"step_kind", step_kind_name(e.step_kind)},
                         {"returns", e.returns}});
  }
  return Json{{"nodes", std::move(nodes)},
              {"edges", std::move(edges)},
              {"witness", g.witness()},
              {"stuck", g.stuck() ? Json(*g.stuck()) : Json(nullptr)}};
}

Json to_json(const VisState& s) {
  Json chains = Json::array();
  for (const Chain& c : s.chains) chains.push_back(c.nodes);
  return Json{{"chains", std::move(chains)}, {"focus", s.focus}};
}

Json to_json(const TraceDocument& doc) {
  return Json{{"schema_version", doc.schema_version},
              {"program", doc.program},
              {"entry", doc.entry},
              {"params", params_json(doc.params)},
              {"report", report_json(doc.report)},
              {"graph", doc.graph ? to_json(*doc.graph) : Json(nullptr)},
              {"jump_path", doc.jump_path},
              {"blame", doc.blame ? blame_json(*doc.blame) : Json(nullptr)}};
}

Json to_json(const ParseError& e, const SourceFile& src) {
  Json j{{"error", "parse_error"}, {"message", e.message}, {"span", span_json(e.span)}};
  if (e.span.valid()) {
    auto [line, col] = src.position(e.span.begin);
    j["line"] = line;
    j["col"] = col;
  } else {
    j["line"] = nullptr;
    j["col"] = nullptr;
  }
  j["expected"] = e.expected;
  return j;
}

std::string serialize(const TraceDocument& doc) { return to_json(doc).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Reading

ReductionGraph graph_from_json(const Json& j, bool strict) {
  object(j, "graph", strict, {"nodes", "edges", "witness", "stuck"});
  std::vector<GraphNode> nodes;
  const Json& ns = array(j["nodes"], "graph.nodes");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const std::string w = "graph.nodes[" + std::to_string(i) + "]";
    object(ns[i], w, strict,
           {"id", "path", "version", "label", "highlight", "span", "stuck", "value", "calls"});
    GraphNode n;
    n.id = read_u32(ns[i]["id"], w + ".id");
    n.path = read_path(ns[i]["path"], w + ".path");
    n.version = read_u32(ns[i]["version"], w + ".version");
    n.label = read_string(ns[i]["label"], w + ".label");
    const Json& h = array(ns[i]["highlight"], w + ".highlight");
    if (h.size() != 2) fail(w + ".highlight", "expected two offsets");
    n.highlight_begin = read_u32(h[0], w + ".highlight");
    n.highlight_end = read_u32(h[1], w + ".highlight");
    if (n.highlight_end < n.highlight_begin || n.highlight_end > n.label.size())
      fail(w + ".highlight", "range outside the label");
    n.span = read_span(ns[i]["span"], w + ".span", strict);
    n.stuck = read_bool(ns[i]["stuck"], w + ".stuck");
    n.value = read_bool(ns[i]["value"], w + ".value");
    for (const Json& c : array(ns[i]["calls"], w + ".calls")) {
      object(c, w + ".calls", strict, {"path", "node"});
      n.calls.push_back(CallSite{read_path(c["path"], w + ".calls.path"),
                                 read_u32(c["node"], w + ".calls.node")});
    }
    nodes.push_back(std::move(n));
  }
  std::vector<GraphEdge> edges;
  const Json& es = array(j["edges"], "graph.edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string w = "graph.edges[" + std::to_string(i) + "]";
    object(es[i], w, strict, {"from", "to", "kind", "step", "step_kind", "returns"});
    GraphEdge e;
    e.from = read_u32(es[i]["from"], w + ".from");
    e.to = read_u32(es[i]["to"], w + ".to");
    e.kind = read_enum<EdgeKind>(es[i]["kind"], w + ".kind",
                                 {EdgeKind::Single, EdgeKind::Subterm, EdgeKind::Call, EdgeKind::Return},
                                 edge_kind_name);
    e.step = read_u32(es[i]["step"], w + ".step");
    e.step_kind = read_enum<StepKind>(es[i]["step_kind"], w + ".step_kind",
                                      {StepKind::Prim, StepKind::Call, StepKind::Match, StepKind::Cond},
                                      step_kind_name);
    e.returns = read_bool(es[i]["returns"], w + ".returns");
    edges.push_back(e);
  }
  NodeId witness = read_u32(j["witness"], "graph.witness");
  std::optional<NodeId> stuck;
  if (!j["stuck"].is_null()) stuck = read_u32(j["stuck"], "graph.stuck");
  try {
    return ReductionGraph::from_parts(std::move(nodes), std::move(edges), witness, stuck);
  } catch (const std::invalid_argument& e) {
    fail("graph", e.what());
  }
}

VisState vis_state_from_json(const Json& j, bool strict) {
  object(j, "state", strict, {"chains", "focus"});
  VisState s;
  for (const Json& c : array(j["chains"], "state.chains")) {
    Chain chain;
    for (const Json& n : array(c, "state.chains")) chain.nodes.push_back(read_u32(n, "state.chains"));
    s.chains.push_back(std::move(chain));
  }
  s.focus = read_u32(j["focus"], "state.focus");
  return s;
}

TraceDocument document_from_json(const Json& j, bool strict) {
  object(j, "document", strict,
         {"schema_version", "program", "entry", "params", "report", "graph", "jump_path", "blame"});
  TraceDocument doc;
  doc.schema_version = read_string(j["schema_version"], "schema_version");
  if (doc.schema_version.rfind("1.", 0) != 0)
    fail("schema_version", "unsupported version " + doc.schema_version);
  if (strict && doc.schema_version != kSchemaVersion)
    fail("schema_version", "expected " + std::string(kSchemaVersion));
  doc.program = read_string(j["program"], "program");
  doc.entry = read_string(j["entry"], "entry");
  doc.params = read_params(j["params"], strict);
  doc.report = read_report(j["report"], strict);
  if (!j["graph"].is_null()) doc.graph = graph_from_json(j["graph"], strict);
  for (const Json& n : array(j["jump_path"], "jump_path")) {
    NodeId id = read_u32(n, "jump_path");
    if (!doc.graph || !doc.graph->contains(id)) fail("jump_path", "unknown node " + std::to_string(id));
    doc.jump_path.push_back(id);
  }
  if (!j["blame"].is_null()) doc.blame = read_blame(j["blame"], strict);
  return doc;
}

TraceDocument parse_document(const std::string& text, bool strict) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j, strict);
}

// ---------------------------------------------------------------------------
// Assembly

ReportSummary summarize(const SearchReport& r) {
  ReportSummary s;
  s.classification = r.classification;
  s.tests_passed = r.tests_passed;
  s.runtime_errors = r.runtime_errors;
  s.traces_run = r.traces_run;
  s.elapsed_seconds = r.elapsed_seconds;
  s.detail = r.detail;
  s.span = r.span;
  for (const Witness& w : r.witnesses) {
    WitnessSummary ws;
    ws.call = pretty_wildcards(w.call);
    for (const ExprPtr& a : w.args) ws.args.push_back(pretty_wildcards(a));
    ws.stuck_term = pretty_wildcards(w.stuck_term);
    ws.stuck_span = w.stuck_span;
    ws.conflict = w.conflict;
    for (const TypePtr& t : w.partial_input_types) ws.partial_input_types.push_back(type_to_string(t));
    ws.seed = w.seed;
    ws.trace_length = w.trace.size();
    s.witnesses.push_back(std::move(ws));
  }
  return s;
}

TraceDocument analyze(const SourceFile& src, const std::string& entry, const SearchParams& params) {
  Program program = parse_program(src);
  ExprPtr e = link_entry(program, entry);
  SearchReport r = gen_witness(params, e);
  TraceDocument doc;
  doc.program = src.text();
  doc.entry = entry_name(program, entry);
  doc.params = params;
  doc.report = summarize(r);
  if (!r.witnesses.empty()) {
    const Witness& w = r.witnesses.front();
    doc.graph = build_graph(w);
    doc.jump_path = jump_compress(*doc.graph);
    try {
      doc.blame = blame(w);
    } catch (const MissingProvenance&) {
      doc.blame.reset();
    }
  }
  return doc;
}

}  // namespace witness
