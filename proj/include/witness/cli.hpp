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

#ifndef WITNESS_CLI_HPP
#define WITNESS_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include "witness/document.hpp"

namespace witness {

/// 0 safe, 1 witness, 2 unbound or looping, 3 timeout or ambiguous.
int exit_code(Classification c);
inline constexpr int kUsageExit = 4;

std::string render_report(const TraceDocument& doc);

/// The node label with its redex wrapped in «».
std::string render_node(const GraphNode& n);

/// One block per chain; `>` marks the focus and `==>` a thick step.
std::string render_state(const VisState& s, const ReductionGraph& g);

struct ScriptCommand {
  Command command = Command::StepForward;
  NodeId node = 0;
  std::optional<NodeId> call;
  friend bool operator==(const ScriptCommand&, const ScriptCommand&) = default;
};

/// `verb node [call]`. Throws std::invalid_argument.
ScriptCommand parse_script_command(const std::string& line);
std::string format_script_command(const ScriptCommand& c);

/// Applies `script` from the initial state. A failing command leaves the
/// state unchanged and its error name is recorded.
Json replay_script(const ReductionGraph& g, const std::vector<ScriptCommand>& script);

/// Interactive traversal over one document.
class Explorer {
 public:
  explicit Explorer(TraceDocument doc);

  /// Runs one REPL line and returns the text to print.
  std::string execute(const std::string& line);
  bool done() const { return done_; }
  const VisState& state() const { return state_; }
  const ReductionGraph& graph() const { return *doc_.graph; }

 private:
  TraceDocument doc_;
  VisState state_;
  bool done_ = false;
};

struct Fixture {
  std::string name;
  TraceDocument document;
  std::vector<ScriptCommand> script;
  Json expected;
};

/// Deterministic conformance set: a guided script and seeded random
/// scripts for each program that has a witness.
std::vector<Fixture> make_fixtures(const std::vector<SourceFile>& programs,
                                   std::size_t random_scripts = 2);

}  // namespace witness

#endif  // WITNESS_CLI_HPP
