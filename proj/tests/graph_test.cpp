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

#include <set>

#include "test_programs.hpp"
#include "witness/graph.hpp"

namespace witness {
namespace {

ReductionGraph graph_of(const ExprPtr& e) {
  RunResult r = run(e, RunOptions{}, 1);
  std::optional<Outcome> stuck;
  if (r.outcome.kind == OutcomeKind::Stuck) stuck = r.outcome;
  return build_graph(e, r.trace, r.subst, stuck);
}

ExprPtr call_of(const std::string& program, const std::string& fn, ExprPtr arg) {
  return mk_app(link_entry(parse_program(testing::program_source(program)), fn), std::move(arg));
}

std::vector<std::string> labels(const ReductionGraph& g, const std::vector<NodeId>& ids) {
  std::vector<std::string> out;
  for (NodeId id : ids) out.push_back(g.node(id).label);
  return out;
}

std::optional<NodeId> by_label(const ReductionGraph& g, const std::string& label,
                               const Path& path = {}) {
  for (const GraphNode& n : g.nodes())
    if (n.label == label && n.path == path) return n.id;
  return std::nullopt;
}

TEST(Graph, SimpleReduction) {
  ReductionGraph g = graph_of(parse_expr("1 + 2 + 3"));
  std::multiset<std::string> got;
  for (const GraphNode& n : g.nodes()) got.insert(n.label);
  EXPECT_EQ(got, (std::multiset<std::string>{"1 + 2 + 3", "3 + 3", "6", "1 + 2", "3"}));
  ASSERT_EQ(g.edges().size(), 3u);
  int subterm = 0;
  for (const GraphEdge& e : g.edges()) {
    if (e.kind == EdgeKind::Subterm) {
      ++subterm;
      EXPECT_EQ(g.node(e.from).label, "1 + 2");
      EXPECT_EQ(g.node(e.to).label, "3");
    }
  }
  EXPECT_EQ(subterm, 1);
  EXPECT_EQ(labels(g, jump_compress(g)), (std::vector<std::string>{"1 + 2 + 3", "6"}));
  EXPECT_FALSE(g.stuck());
}

TEST(Graph, ValueProgramHasOneNode) {
  ReductionGraph g = graph_of(parse_expr("5"));
  EXPECT_EQ(g.nodes().size(), 1u);
  EXPECT_TRUE(g.edges().empty());
  VisState s = initial_state(g);
  ASSERT_EQ(s.chains.size(), 1u);
  EXPECT_EQ(s.chains[0].nodes, std::vector<NodeId>{g.witness()});
  EXPECT_EQ(jump_compress(g).size(), 1u);
}

TEST(Graph, RedexHighlight) {
  ReductionGraph g = graph_of(parse_expr("1 + 2 + 3"));
  const GraphNode& w = g.node(g.witness());
  EXPECT_EQ(w.label.substr(w.highlight_begin, w.highlight_end - w.highlight_begin), "1 + 2");
}

TEST(Graph, FacShape) {
  ReductionGraph g = graph_of(call_of("fac", "fac", mk_int(1)));
  ASSERT_TRUE(g.stuck());
  EXPECT_TRUE(g.node(*g.stuck()).stuck);
  EXPECT_EQ(g.terminal(), *g.stuck());
  EXPECT_EQ(labels(g, jump_compress(g)),
            (std::vector<std::string>{"fac 1", "1 * fac 0", "1 * true", "1 * true"}));
  EXPECT_EQ(g.main_path().size(), 9u);
  EXPECT_EQ(full_size(g), 20u);
  // Call edges keep their kind at the root.
  EXPECT_EQ(g.out_edge(g.witness())->kind, EdgeKind::Call);
}

TEST(Graph, FacWitnessSizeGolden) {
  SearchReport r = gen_witness(SearchParams{}, link_entry(parse_program(testing::program_source("fac")), ""));
  ASSERT_EQ(r.classification, Classification::WitnessFound);
  ReductionGraph g = build_graph(r.witnesses.front());
  std::size_t size = full_size(g);
  EXPECT_GE(size, 12u);
  EXPECT_LE(size, 26u);
  std::string actual = "witness " + pretty_wildcards(r.witnesses.front().call) + "\nfull_size " +
                       std::to_string(size) + "\njump_path " + std::to_string(jump_compress(g).size()) + "\n";
  EXPECT_EQ(actual, testing::golden("fac_trace_size.txt", actual));
}

TEST(Graph, OccurrencesAreDistinct) {
  ReductionGraph g = graph_of(call_of("fac", "fac", mk_int(1)));
  std::set<std::pair<Path, std::uint32_t>> keys;
  for (const GraphNode& n : g.nodes()) EXPECT_TRUE(keys.insert({n.path, n.version}).second);
  int fac0 = 0;
  for (const GraphNode& n : g.nodes())
    if (n.label == "fac 0") ++fac0;
  EXPECT_EQ(fac0, 1);
}

TEST(Traversal, FacFigureSequence) {
  ReductionGraph g = graph_of(call_of("fac", "fac", mk_int(1)));
  VisState s = initial_state(g);
  ASSERT_EQ(s.chains.size(), 1u);
  EXPECT_EQ(labels(g, s.chains[0].nodes), (std::vector<std::string>{"fac 1", "1 * true"}));
  EXPECT_EQ(thickness(g, s.chains[0]), std::vector<bool>{true});

  // Step 2: jump forward to the next call.
  CommandResult r = jump_forward(s, g, g.witness());
  ASSERT_TRUE(r.inserted);
  EXPECT_EQ(g.node(*r.inserted).label, "1 * fac 0");
  s = r.state;

  // Step 3: step into the recursive call.
  const GraphNode& mid = g.node(*r.inserted);
  ASSERT_EQ(mid.calls.size(), 1u);
  EXPECT_EQ(mid.calls[0].path, (Path{1}));
  r = step_into(s, g, mid.id, mid.calls[0].node);
  ASSERT_EQ(r.state.chains.size(), 2u);
  EXPECT_EQ(labels(g, r.state.chains[1].nodes), (std::vector<std::string>{"fac 0", "true"}));
  s = r.state;

  // Step 4: a single step forward from fac 0.
  r = step_forward(s, g, mid.calls[0].node);
  EXPECT_EQ(labels(g, r.state.chains[1].nodes),
            (std::vector<std::string>{"fac 0", "if 0 <= 0 then true else 0 * fac (0 - 1)", "true"}));
  EXPECT_EQ(thickness(g, r.state.chains[1]), (std::vector<bool>{false, true}));
}

TEST(Traversal, NoOps) {
  ReductionGraph g = graph_of(call_of("fac", "fac", mk_int(1)));
  VisState s = initial_state(g);
  CommandResult r = step_backward(s, g, g.witness());
  EXPECT_FALSE(r.inserted);
  EXPECT_FALSE(r.notice.empty());
  EXPECT_EQ(r.state.chains, s.chains);
  r = step_forward(s, g, *g.stuck());
  EXPECT_FALSE(r.inserted);
  EXPECT_FALSE(r.notice.empty());
}

TEST(Traversal, Errors) {
  ReductionGraph g = graph_of(call_of("fac", "fac", mk_int(1)));
  VisState s = initial_state(g);
  NodeId hidden = *g.succ(g.witness());
  try {
    step_forward(s, g, hidden);
    FAIL();
  } catch (const TraversalError& e) {
    EXPECT_EQ(e.kind(), TraversalError::Kind::NodeNotVisible);
  }
  try {
    step_into(s, g, *g.stuck(), *g.stuck());
    FAIL();
  } catch (const TraversalError& e) {
    EXPECT_EQ(e.kind(), TraversalError::Kind::NotACall);
  }
  try {
    step_over(s, g, g.witness(), g.witness());
    FAIL();
  } catch (const TraversalError& e) {
    EXPECT_EQ(e.kind(), TraversalError::Kind::CallNeverReturns);
  }
  try {
    step_forward(s, g, 9999);
    FAIL();
  } catch (const TraversalError& e) {
    EXPECT_EQ(e.kind(), TraversalError::Kind::UnknownNode);
  }
}

TEST(Traversal, LiteralIsNotACall) {
  ReductionGraph g = graph_of(call_of("fac", "fac", mk_int(1)));
  VisState s = initial_state(g);
  s = jump_forward(s, g, g.witness()).state;
  NodeId mid = s.focus;
  auto one = by_label(g, "1 <= 0", {0});
  ASSERT_TRUE(one);
  EXPECT_THROW(step_into(s, g, mid, *one), TraversalError);
}

TEST(Traversal, StepOverReplacesCallByResult) {
  ReductionGraph g = graph_of(call_of("fac", "fac", mk_int(1)));
  VisState s = jump_forward(initial_state(g), g, g.witness()).state;
  const GraphNode& mid = g.node(s.focus);
  CommandResult r = step_over(s, g, mid.id, mid.calls[0].node);
  ASSERT_TRUE(r.inserted);
  EXPECT_EQ(g.node(*r.inserted).label, "1 * true");
  EXPECT_FALSE(g.node(*r.inserted).stuck);
  CommandResult again = step_over(r.state, g, mid.id, mid.calls[0].node);
  EXPECT_FALSE(again.inserted);
  EXPECT_EQ(again.state.chains, r.state.chains);
}

TEST(Traversal, SubCallVariant) {
  ReductionGraph g = graph_of(call_of("fac_sub", "fac", mk_int(1)));
  std::vector<std::string> jc = labels(g, jump_compress(g));
  EXPECT_EQ(jc, (std::vector<std::string>{"fac 1", "1 * fac (sub 1 1)", "1 * fac 0", "1 * true",
                                          "1 * true"}));
  VisState s = initial_state(g);
  s = jump_forward(s, g, g.witness()).state;
  const GraphNode& n = g.node(s.focus);
  ASSERT_EQ(n.calls.size(), 1u);
  CommandResult r = step_into(s, g, n.id, n.calls[0].node);
  EXPECT_EQ(labels(g, r.state.chains.back().nodes), (std::vector<std::string>{"sub 1 1", "0"}));
}

TEST(Traversal, JumpBackwardFindsLastCall) {
  ReductionGraph g = graph_of(call_of("fac", "fac", mk_int(1)));
  VisState s = initial_state(g);
  CommandResult r = jump_backward(s, g, *g.stuck());
  ASSERT_TRUE(r.inserted);
  EXPECT_EQ(g.node(*r.inserted).label, "1 * true");
  r = jump_backward(r.state, g, *r.inserted);
  EXPECT_EQ(g.node(*r.inserted).label, "1 * fac 0");
}

TEST(Traversal, ParseCommand) {
  EXPECT_EQ(parse_command("jfwd"), Command::JumpForward);
  EXPECT_EQ(parse_command("step_over"), Command::StepOver);
  EXPECT_FALSE(parse_command("show"));
}

TEST(Graph, FromPartsRejectsBadIds) {
  ReductionGraph g = graph_of(parse_expr("1 + 2 + 3"));
  std::vector<GraphEdge> edges = g.edges();
  edges.push_back(edges.front());
  EXPECT_THROW(ReductionGraph::from_parts(g.nodes(), edges, g.witness(), std::nullopt),
               std::invalid_argument);
  EXPECT_THROW(ReductionGraph::from_parts(g.nodes(), g.edges(), 77, std::nullopt),
               std::invalid_argument);
  ReductionGraph copy = ReductionGraph::from_parts(g.nodes(), g.edges(), g.witness(), g.stuck());
  EXPECT_EQ(copy.main_path(), g.main_path());
}

}  // namespace
}  // namespace witness
