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

#ifndef WITNESS_GRAPH_HPP
#define WITNESS_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "witness/eval.hpp"
#include "witness/search.hpp"

namespace witness {

using NodeId = std::uint32_t;

enum class EdgeKind { Single, Subterm, Call, Return };
const char* edge_kind_name(EdgeKind k);

/// A call occurrence inside a node: `path` is relative to the node.
struct CallSite {
  Path path;
  NodeId node = 0;
  friend bool operator==(const CallSite&, const CallSite&) = default;
};

/// One occurrence of a term: the subterm at `path` of the whole term after
/// `version` steps. The stuck node sits at the root, one version past the
/// final term.
struct GraphNode {
  NodeId id = 0;
  Path path;
  std::uint32_t version = 0;
  ExprPtr expr;
  std::string label;
  /// Character range of the redex inside `label`; empty when none.
  std::uint32_t highlight_begin = 0;
  std::uint32_t highlight_end = 0;
  Span span;
  bool stuck = false;
  bool value = false;
  std::vector<CallSite> calls;
};

struct GraphEdge {
  NodeId from = 0;
  NodeId to = 0;
  EdgeKind kind = EdgeKind::Single;
  std::uint32_t step = 0;
  StepKind step_kind = StepKind::Prim;
  bool returns = false;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Immutable steps-to graph. Every node has at most one incoming and one
/// outgoing edge; the edges of one path form a single line.
class ReductionGraph {
 public:
  ReductionGraph() = default;

  /// Rebuilds the adjacency from stored parts. Throws std::invalid_argument
  /// if ids are out of range or a node has two outgoing or incoming edges.
  static ReductionGraph from_parts(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges,
                                   NodeId witness, std::optional<NodeId> stuck);

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const GraphNode& node(NodeId id) const { return nodes_.at(id); }
  bool contains(NodeId id) const { return id < nodes_.size(); }
  NodeId witness() const { return witness_; }
  std::optional<NodeId> stuck() const { return stuck_; }
  /// Last node of the root line.
  NodeId terminal() const;

  const GraphEdge* out_edge(NodeId id) const;
  const GraphEdge* in_edge(NodeId id) const;
  std::optional<NodeId> succ(NodeId id) const;
  std::optional<NodeId> pred(NodeId id) const;
  std::optional<NodeId> find(const Path& path, std::uint32_t version) const;

  /// A call is about to happen from this node or a call has just returned
  /// into it.
  bool is_boundary(NodeId id) const;
  /// The root line from the witness to the terminal.
  std::vector<NodeId> main_path() const;
  /// First value on the line of call node `call`, if the call returns.
  std::optional<NodeId> return_of(NodeId call) const;
  /// Return node, or the last node of the call's line when it never returns.
  NodeId exit_of(NodeId call) const;

 private:
  void index();

  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  NodeId witness_ = 0;
  std::optional<NodeId> stuck_;
  std::vector<std::optional<std::size_t>> out_;
  std::vector<std::optional<std::size_t>> in_;
  std::map<std::pair<Path, std::uint32_t>, NodeId> by_key_;
};

/// Graph of a recorded run from `initial`. `stuck` adds a stuck node after
/// the final term. Labels are resolved through `final_subst`.
ReductionGraph build_graph(const ExprPtr& initial, const std::vector<StepEvent>& trace,
                           const Subst& final_subst, const std::optional<Outcome>& stuck);
ReductionGraph build_graph(const Witness& w);

/// Nodes on the root line that are the witness, the terminal, or a call or
/// return boundary.
std::vector<NodeId> jump_compress(const ReductionGraph& g);

/// Every node of the fully expanded trace.
std::size_t full_size(const ReductionGraph& g);

// ---------------------------------------------------------------------------
// Visualization state

struct Chain {
  std::vector<NodeId> nodes;
  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Disjoint linear chains of visible nodes.
struct VisState {
  std::vector<Chain> chains;
  NodeId focus = 0;
  friend bool operator==(const VisState&, const VisState&) = default;
};

/// A single chain from the witness to the terminal.
VisState initial_state(const ReductionGraph& g);

/// Per adjacent pair in `c`: true when the pair is not a single step apart.
std::vector<bool> thickness(const ReductionGraph& g, const Chain& c);

bool is_visible(const VisState& s, NodeId n);

class TraversalError : public std::runtime_error {
 public:
  enum class Kind { NodeNotVisible, NotACall, CallNeverReturns, UnknownNode };
  TraversalError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};
const char* traversal_error_name(TraversalError::Kind k);

struct CommandResult {
  VisState state;
  std::optional<NodeId> inserted;
  /// Set when the command changed nothing.
  std::string notice;
};

CommandResult step_forward(const VisState& s, const ReductionGraph& g, NodeId n);
CommandResult step_backward(const VisState& s, const ReductionGraph& g, NodeId n);
CommandResult jump_forward(const VisState& s, const ReductionGraph& g, NodeId n);
CommandResult jump_backward(const VisState& s, const ReductionGraph& g, NodeId n);
/// `call` must be one of `n`'s call sites.
CommandResult step_into(const VisState& s, const ReductionGraph& g, NodeId n, NodeId call);
CommandResult step_over(const VisState& s, const ReductionGraph& g, NodeId n, NodeId call);

enum class Command { StepForward, StepBackward, JumpForward, JumpBackward, StepInto, StepOver };
const char* command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

/// Dispatches to the command functions; `call` is needed for into and over.
CommandResult apply_command(const VisState& s, const ReductionGraph& g, Command c, NodeId n,
                            std::optional<NodeId> call = std::nullopt);

}  // namespace witness

#endif  // WITNESS_GRAPH_HPP
