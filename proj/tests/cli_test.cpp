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
#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include "test_programs.hpp"
#include "witness/cli.hpp"

namespace witness {
namespace {

const char* kFixturePrograms[] = {"fac", "fac_sub", "sqsum", "sumlist", "append", "wwhile", "palindrome"};

TraceDocument fac_document() {
  SearchParams p;
  TraceDocument doc = analyze(testing::program_source("fac"), "", p);
  doc.report.elapsed_seconds = 0.0;
  return doc;
}

std::vector<ScriptCommand> read_script(const std::string& text) {
  std::vector<ScriptCommand> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(parse_script_command(line));
  return out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(exit_code(Classification::Safe), 0);
  EXPECT_EQ(exit_code(Classification::WitnessFound), 1);
  EXPECT_EQ(exit_code(Classification::UnboundVariable), 2);
  EXPECT_EQ(exit_code(Classification::InfiniteRecursion), 2);
  EXPECT_EQ(exit_code(Classification::Timeout), 3);
  EXPECT_EQ(exit_code(Classification::Ambiguous), 3);
}

TEST(Cli, RenderNodeMarksRedex) {
  GraphNode n;
  n.label = "1 * fac 0";
  n.highlight_begin = 4;
  n.highlight_end = 9;
  EXPECT_EQ(render_node(n), "1 * «fac 0»");
  n.highlight_end = 4;
  EXPECT_EQ(render_node(n), "1 * fac 0");
}

TEST(Cli, ReportGolden) {
  std::string actual = render_report(fac_document());
  EXPECT_EQ(actual, testing::golden("report_fac.txt", actual));
}

TEST(Cli, ScriptCommands) {
  ScriptCommand c = parse_script_command("into 6 8");
  EXPECT_EQ(c.command, Command::StepInto);
  EXPECT_EQ(c.node, 6u);
  EXPECT_EQ(c.call, 8u);
  EXPECT_EQ(format_script_command(c), "into 6 8");
  EXPECT_EQ(parse_script_command("step_forward 3").command, Command::StepForward);
  EXPECT_THROW(parse_script_command(""), std::invalid_argument);
  EXPECT_THROW(parse_script_command("fly 1"), std::invalid_argument);
  EXPECT_THROW(parse_script_command("fwd x"), std::invalid_argument);
  EXPECT_THROW(parse_script_command("fwd 1 2"), std::invalid_argument);
  EXPECT_THROW(parse_script_command("into 1"), std::invalid_argument);
}

TEST(Cli, ExplorerFollowsTheFacFigure) {
  Explorer ex(fac_document());
  const ReductionGraph& g = ex.graph();
  ASSERT_EQ(ex.state().chains.size(), 1u);
  EXPECT_EQ(thickness(g, ex.state().chains[0]), std::vector<bool>{true});
  std::string out = ex.execute("jfwd 0");
  EXPECT_NE(out.find("1 * «fac 0»"), std::string::npos);
  NodeId mid = ex.state().focus;
  NodeId call = g.node(mid).calls.front().node;
  out = ex.execute("into " + std::to_string(call));
  ASSERT_EQ(ex.state().chains.size(), 2u);
  EXPECT_EQ(g.node(ex.state().chains[1].nodes.front()).label, "fac 0");
  EXPECT_EQ(g.node(ex.state().chains[1].nodes.back()).label, "true");
  EXPECT_NE(out.find("chain 1"), std::string::npos);
  ex.execute("fwd " + std::to_string(call));
  EXPECT_EQ(ex.state().chains[1].nodes.size(), 3u);
  EXPECT_EQ(out.find("error"), std::string::npos);
  std::string view = ex.execute("show");
  EXPECT_EQ(view, testing::golden("explore_fac.txt", view));
}

TEST(Cli, ExplorerErrorsLeaveStateUnchanged) {
  Explorer ex(fac_document());
  VisState before = ex.state();
  EXPECT_NE(ex.execute("fwd 999").find("UnknownNode"), std::string::npos);
  EXPECT_NE(ex.execute("fwd 5").find("NodeNotVisible"), std::string::npos);
  EXPECT_NE(ex.execute("into 19").find("NotACall"), std::string::npos);
  EXPECT_NE(ex.execute("warp 1").find("unknown command"), std::string::npos);
  EXPECT_NE(ex.execute("fwd").find("usage"), std::string::npos);
  EXPECT_EQ(ex.state(), before);
  EXPECT_EQ(ex.execute(""), "");
  EXPECT_FALSE(ex.done());
  ex.execute("quit");
  EXPECT_TRUE(ex.done());
}

TEST(Cli, ExplorerNeedsAGraph) {
  TraceDocument doc;
  EXPECT_THROW(Explorer{doc}, std::invalid_argument);
}

TEST(Fixtures, AtLeastTwentyAndCommittedCopyIsCurrent) {
  std::vector<SourceFile> programs;
  for (const char* p : kFixturePrograms) {
    SourceFile s = testing::program_source(p);
    programs.emplace_back(std::string(p) + ".ml", s.text());
  }
  std::vector<Fixture> fixtures = make_fixtures(programs);
  ASSERT_GE(fixtures.size(), 20u);
  Json index = Json::parse(testing::read_test_file("fixtures/index.json"));
  ASSERT_EQ(index.size(), fixtures.size());
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const Fixture& f = fixtures[i];
    EXPECT_EQ(index[i], f.name);
    EXPECT_EQ(testing::read_test_file("fixtures/" + f.name + ".document.json"), serialize(f.document)) << f.name;
    EXPECT_EQ(testing::read_test_file("fixtures/" + f.name + ".expected.json"), f.expected.dump(2) + "\n") << f.name;
  }
}

TEST(Fixtures, ReplayFromDisk) {
  Json index = Json::parse(testing::read_test_file("fixtures/index.json"));
  for (const Json& name : index) {
    const std::string base = "fixtures/" + name.get<std::string>();
    TraceDocument doc = parse_document(testing::read_test_file(base + ".document.json"));
    std::vector<ScriptCommand> script = read_script(testing::read_test_file(base + ".script.txt"));
    Json expected = Json::parse(testing::read_test_file(base + ".expected.json"));
    ASSERT_TRUE(doc.graph.has_value());
    EXPECT_EQ(replay_script(*doc.graph, script), expected) << base;
    EXPECT_EQ(vis_state_from_json(expected["initial"]), initial_state(*doc.graph));
    for (const Json& step : expected["steps"]) {
      VisState s = vis_state_from_json(step["state"]);
      std::vector<NodeId> seen;
      for (const Chain& c : s.chains) seen.insert(seen.end(), c.nodes.begin(), c.nodes.end());
      std::sort(seen.begin(), seen.end());
      EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end()) << base;
    }
  }
}

// The installed tool.

struct ToolRun {
  int status;
  std::string out;
};

ToolRun run_tool(const std::string& args) {
  std::string cmd = std::string(WITNESS_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  int status = pclose(p);
  return ToolRun{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string program_path(const std::string& name) { return std::string(WITNESS_TEST_DIR) + "/programs/" + name + ".ml"; }

TEST(Tool, CheckExitCodes) {
  EXPECT_EQ(run_tool("check " + program_path("fac") + " --entry fac").status, 1);
  ToolRun id = run_tool("check " + program_path("id") + " --entry id");
  EXPECT_EQ(id.status, 0);
  EXPECT_NE(id.out.find("1000 tests passed"), std::string::npos);
  EXPECT_EQ(run_tool("check " + program_path("loop")).status, 2);
  EXPECT_EQ(run_tool("check " + program_path("unbound")).status, 2);
  EXPECT_EQ(run_tool("check " + program_path("fac_bound")).status, 3);
  EXPECT_EQ(run_tool("check " + program_path("fac") + " --entry nope").status, 4);
  EXPECT_EQ(run_tool("check " + program_path("fac") + " --format xml").status, 4);
  EXPECT_EQ(run_tool("check").status, 4);
  EXPECT_EQ(run_tool("").status, 4);
}

TEST(Tool, CheckJsonIsATraceDocument) {
  ToolRun r = run_tool("check " + program_path("fac") + " --format json --seed 0");
  EXPECT_EQ(r.status, 1);
  TraceDocument doc = parse_document(r.out);
  EXPECT_EQ(doc.jump_path.size(), 4u);
  EXPECT_EQ(doc.report.witnesses.front().stuck_term, "1 * true");
}

TEST(Tool, ParseErrorExit) {
  std::string bad = ::testing::TempDir() + "bad.ml";
  FILE* f = fopen(bad.c_str(), "w");
  fputs("let f x =\n  x +\n", f);
  fclose(f);
  ToolRun r = run_tool("check " + bad + " --format json");
  EXPECT_EQ(r.status, 4);
  EXPECT_EQ(Json::parse(r.out)["error"], "parse_error");
}

TEST(Tool, ExploreScript) {
  std::string dir = ::testing::TempDir();
  ToolRun doc = run_tool("check " + program_path("fac") + " --format json");
  FILE* f = fopen((dir + "fac.json").c_str(), "w");
  fputs(doc.out.c_str(), f);
  fclose(f);
  f = fopen((dir + "fac.script").c_str(), "w");
  fputs("jfwd 0\ninto 8\nquit\nfwd 0\n", f);
  fclose(f);
  ToolRun r = run_tool("explore " + dir + "fac.json --script " + dir + "fac.script");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("[6] 1 * «fac 0»"), std::string::npos);
  EXPECT_NE(r.out.find("chain 1"), std::string::npos);
  EXPECT_EQ(r.out.find("error"), std::string::npos);
}

}  // namespace
}  // namespace witness
