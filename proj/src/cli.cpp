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

#include "witness/cli.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace witness {

namespace {

std::string location(const SourceFile& src, const Span& s) {
  if (!s.valid()) return "?";
  auto [l1, c1] = src.position(s.begin);
  auto [l2, c2] = src.position(s.end);
  return std::to_string(l1) + ":" + std::to_string(c1) + "-" + std::to_string(l2) + ":" + std::to_string(c2);
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

NodeId parse_id(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
    throw std::invalid_argument("expected a node id, got '" + s + "'");
  return static_cast<NodeId>(std::stoul(s));
}

bool takes_call(Command c) { return c == Command::StepInto || c == Command::StepOver; }

const char* short_verb(Command c) {
  switch (c) {
    case Command::StepForward: return "fwd";
    case Command::StepBackward: return "back";
    case Command::JumpForward: return "jfwd";
    case Command::JumpBackward: return "jback";
    case Command::StepInto: return "into";
    case Command::StepOver: return "over";
  }
  return "fwd";
}

const char* kHelp =
    "fwd N | back N | jfwd N | jback N   step or jump along the line of node N\n"
    "into N [C] | over N [C]            enter or skip the call C inside node N\n"
    "show                               print the current view\n"
    "quit                               leave\n";

}  // namespace

int exit_code(Classification c) {
  switch (c) {
    case Classification::Safe: return 0;
    case Classification::WitnessFound: return 1;
    case Classification::UnboundVariable:
    case Classification::InfiniteRecursion: return 2;
    case Classification::Timeout:
    case Classification::Ambiguous: return 3;
  }
  return 3;
}

std::string render_report(const TraceDocument& doc) {
  const ReportSummary& r = doc.report;
  SourceFile src(doc.entry, doc.program);
  std::ostringstream out;
  out << doc.entry << ": " << classification_name(r.classification) << "\n";
  switch (r.classification) {
    case Classification::Safe:
      out << "  " << r.tests_passed << " tests passed";
      if (r.runtime_errors > 0) out << " (" << r.runtime_errors << " with runtime errors)";
      out << "\n";
      break;
    case Classification::WitnessFound: {
      const WitnessSummary& w = r.witnesses.front();
      out << "  witness  " << w.call << "\n";
      out << "  stuck    " << w.stuck_term << " at " << location(src, w.stuck_span) << "\n";
      out << "  conflict " << w.conflict << "\n";
      if (!w.partial_input_types.empty()) {
        out << "  inputs  ";
        for (const std::string& t : w.partial_input_types) out << " " << t;
        out << "\n";
      }
      out << "  seed " << w.seed << ", " << w.trace_length << " steps";
      if (doc.graph) out << ", " << full_size(*doc.graph) << " nodes, jump path " << doc.jump_path.size();
      out << "\n";
      if (r.witnesses.size() > 1) out << "  " << r.witnesses.size() << " witnesses\n";
      if (doc.blame) {
        std::istringstream lines(render_blame(*doc.blame, src));
        for (std::string l; std::getline(lines, l);) out << "  " << l << "\n";
      }
      break;
    }
    default:
      out << "  " << r.detail;
      if (r.span.valid()) out << " at " << location(src, r.span);
      out << "\n";
      break;
  }
  return out.str();
}

std::string render_node(const GraphNode& n) {
  if (n.highlight_end <= n.highlight_begin) return n.label;
  return n.label.substr(0, n.highlight_begin) + "«" +
         n.label.substr(n.highlight_begin, n.highlight_end - n.highlight_begin) + "»" +
         n.label.substr(n.highlight_end);
}

std::string render_state(const VisState& s, const ReductionGraph& g) {
  std::ostringstream out;
  for (std::size_t c = 0; c < s.chains.size(); ++c) {
    const Chain& chain = s.chains[c];
    std::string indent(2 * (c == 0 ? 1 : 2), ' ');
    out << "chain " << c << "\n";
    std::vector<bool> thick = thickness(g, chain);
    for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
      const GraphNode& n = g.node(chain.nodes[i]);
      out << indent << (n.id == s.focus ? "> " : "  ") << "[" << n.id << "] " << render_node(n);
      if (n.stuck) out << "  (stuck)";
      out << "\n";
      if (i < thick.size()) out << indent << (thick[i] ? "  ==>" : "   ->") << "\n";
    }
  }
  return out.str();
}

ScriptCommand parse_script_command(const std::string& line) {
  std::vector<std::string> w = words(line);
  if (w.empty()) throw std::invalid_argument("empty command");
  std::optional<Command> c = parse_command(w[0]);
  if (!c) throw std::invalid_argument("unknown command '" + w[0] + "'");
  std::size_t max_args = takes_call(*c) ? 3 : 2;
  if (w.size() < 2 || w.size() > max_args || (takes_call(*c) && w.size() != 3))
    throw std::invalid_argument(std::string("usage: ") + short_verb(*c) +
                                (takes_call(*c) ? " NODE CALL" : " NODE"));
  ScriptCommand sc;
  sc.command = *c;
  sc.node = parse_id(w[1]);
  if (w.size() == 3) sc.call = parse_id(w[2]);
  return sc;
}

std::string format_script_command(const ScriptCommand& c) {
  std::string out = std::string(short_verb(c.command)) + " " + std::to_string(c.node);
  if (c.call) out += " " + std::to_string(*c.call);
  return out;
}

Json replay_script(const ReductionGraph& g, const std::vector<ScriptCommand>& script) {
  VisState s = initial_state(g);
  Json steps = Json::array();
  for (const ScriptCommand& c : script) {
    Json step{{"command", format_script_command(c)}};
    try {
      CommandResult r = apply_command(s, g, c.command, c.node, c.call);
      s = r.state;
      step["error"] = nullptr;
      step["inserted"] = r.inserted ? Json(*r.inserted) : Json(nullptr);
    } catch (const TraversalError& e) {
      step["error"] = traversal_error_name(e.kind());
      step["inserted"] = nullptr;
    }
    step["state"] = to_json(s);
    steps.push_back(std::move(step));
  }
  return Json{{"initial", to_json(initial_state(g))}, {"steps", std::move(steps)}, {"final", to_json(s)}};
}

// ---------------------------------------------------------------------------
// Explorer

Explorer::Explorer(TraceDocument doc) : doc_(std::move(doc)) {
  if (!doc_.graph) throw std::invalid_argument("document has no trace to explore");
  state_ = initial_state(*doc_.graph);
}

std::string Explorer::execute(const std::string& line) {
  std::vector<std::string> w = words(line);
  if (w.empty()) return "";
  if (w[0] == "quit" || w[0] == "exit") {
    done_ = true;
    return "";
  }
  if (w[0] == "show") return render_state(state_, graph());
  if (w[0] == "help") return kHelp;
  std::optional<Command> c = parse_command(w[0]);
  if (!c) return "unknown command '" + w[0] + "' (try help)\n";
  const ReductionGraph& g = graph();
  ScriptCommand sc;
  sc.command = *c;
  try {
    if (w.size() < 2 || w.size() > (takes_call(*c) ? 3u : 2u))
      throw std::invalid_argument(std::string("usage: ") + short_verb(*c) +
                                  (takes_call(*c) ? " NODE [CALL]" : " NODE"));
    sc.node = parse_id(w[1]);
    if (w.size() == 3) sc.call = parse_id(w[2]);
  } catch (const std::invalid_argument& e) {
    return std::string(e.what()) + "\n";
  }
  if (takes_call(*c) && !sc.call && g.contains(sc.node) && !is_visible(state_, sc.node)) {
    for (const Chain& chain : state_.chains)
      for (NodeId v : chain.nodes)
        for (const CallSite& cs : g.node(v).calls)
          if (cs.node == sc.node && !sc.call) {
            sc.call = sc.node;
            sc.node = v;
          }
  }
  if (takes_call(*c) && !sc.call && g.contains(sc.node)) {
    const std::vector<CallSite>& calls = g.node(sc.node).calls;
    if (calls.size() == 1) sc.call = calls.front().node;
    if (calls.size() > 1) {
      std::string out = "node " + std::to_string(sc.node) + " has several calls:";
      for (const CallSite& cs : calls) out += " " + std::to_string(cs.node) + " (" + g.node(cs.node).label + ")";
      return out + "\n";
    }
    if (calls.empty()) sc.call = sc.node;
  }
  try {
    CommandResult r = apply_command(state_, g, sc.command, sc.node, sc.call);
    state_ = r.state;
    std::string out = r.notice.empty() ? "" : "note: " + r.notice + "\n";
    return out + render_state(state_, g);
  } catch (const TraversalError& e) {
    return std::string("error: ") + traversal_error_name(e.kind()) + ": " + e.what() + "\n";
  }
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

std::vector<NodeId> visible(const VisState& s) {
  std::vector<NodeId> out;
  for (const Chain& c : s.chains) out.insert(out.end(), c.nodes.begin(), c.nodes.end());
  return out;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Advances `s` when the command succeeds.
void push(std::vector<ScriptCommand>& script, VisState& s, const ReductionGraph& g, ScriptCommand c) {
  script.push_back(c);
  try {
    s = apply_command(s, g, c.command, c.node, c.call).state;
  } catch (const TraversalError&) {
  }
}

std::vector<ScriptCommand> guided_script(const ReductionGraph& g) {
  std::vector<ScriptCommand> script;
  VisState s = initial_state(g);
  push(script, s, g, {Command::JumpForward, s.focus, std::nullopt});
  NodeId at = s.focus;
  if (!g.node(at).calls.empty()) {
    NodeId call = g.node(at).calls.front().node;
    push(script, s, g, {Command::StepInto, at, call});
    push(script, s, g, {Command::StepForward, call, std::nullopt});
    push(script, s, g, {Command::StepOver, at, call});
  }
  push(script, s, g, {Command::JumpBackward, s.focus, std::nullopt});
  push(script, s, g, {Command::StepForward, g.witness(), std::nullopt});
  push(script, s, g, {Command::StepBackward, g.terminal(), std::nullopt});
  return script;
}

std::vector<ScriptCommand> random_script(const ReductionGraph& g, std::uint64_t seed, std::size_t length) {
  std::mt19937_64 rng(seed);
  std::vector<ScriptCommand> script;
  VisState s = initial_state(g);
  const NodeId n = static_cast<NodeId>(g.nodes().size());
  for (std::size_t i = 0; i < length; ++i) {
    ScriptCommand c;
    c.command = static_cast<Command>(pick(rng, 6));
    std::vector<NodeId> vis = visible(s);
    c.node = pick(rng, 8) == 0 ? static_cast<NodeId>(pick(rng, n)) : vis[pick(rng, vis.size())];
    if (takes_call(c.command)) {
      const std::vector<CallSite>& calls = g.contains(c.node) ? g.node(c.node).calls : std::vector<CallSite>{};
      c.call = !calls.empty() && pick(rng, 6) != 0 ? calls[pick(rng, calls.size())].node
                                                   : static_cast<NodeId>(pick(rng, n));
    }
    push(script, s, g, c);
  }
  return script;
}

}  // namespace

std::vector<Fixture> make_fixtures(const std::vector<SourceFile>& programs, std::size_t random_scripts) {
  std::vector<Fixture> out;
  SearchParams params;
  for (const SourceFile& src : programs) {
    TraceDocument doc = analyze(src, "", params);
    if (!doc.graph) continue;
    doc.report.elapsed_seconds = 0.0;
    std::string stem = src.path();
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
    if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    std::vector<std::pair<std::string, std::vector<ScriptCommand>>> scripts;
    scripts.emplace_back(stem + "_guided", guided_script(*doc.graph));
    for (std::size_t k = 0; k < random_scripts; ++k)
      scripts.emplace_back(stem + "_random" + std::to_string(k + 1), random_script(*doc.graph, 17 * (k + 1), 12));
    for (auto& [name, script] : scripts) {
      Fixture f;
      f.name = name;
      f.expected = replay_script(*doc.graph, script);
      f.script = std::move(script);
      f.document = doc;
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace witness
