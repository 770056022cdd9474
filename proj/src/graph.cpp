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

#include "witness/graph.hpp"

#include <algorithm>
#include <limits>

namespace witness {

const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Single: return "single";
    case EdgeKind::Subterm: return "subterm";
    case EdgeKind::Call: return "call";
    case EdgeKind::Return: return "return";
  }
  return "single";
}

const char* traversal_error_name(TraversalError::Kind k) {
  switch (k) {
    case TraversalError::Kind::NodeNotVisible: return "NodeNotVisible";
    case TraversalError::Kind::NotACall: return "NotACall";
    case TraversalError::Kind::CallNeverReturns: return "CallNeverReturns";
    case TraversalError::Kind::UnknownNode: return "UnknownNode";
  }
  return "UnknownNode";
}

const char* command_name(Command c) {
  switch (c) {
    case Command::StepForward: return "step_forward";
    case Command::StepBackward: return "step_backward";
    case Command::JumpForward: return "jump_forward";
    case Command::JumpBackward: return "jump_backward";
    case Command::StepInto: return "step_into";
    case Command::StepOver: return "step_over";
  }
  return "step_forward";
}

std::optional<Command> parse_command(const std::string& name) {
  static const std::pair<const char*, Command> kVerbs[] = {
      {"fwd", Command::StepForward},  {"back", Command::StepBackward},
      {"jfwd", Command::JumpForward}, {"jback", Command::JumpBackward},
      {"into", Command::StepInto},    {"over", Command::StepOver},
  };
  for (const auto& [verb, c] : kVerbs)
    if (name == verb || name == command_name(c)) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ReductionGraph

ReductionGraph ReductionGraph::from_parts(std::vector<GraphNode> nodes,
                                          std::vector<GraphEdge> edges, NodeId witness,
                                          std::optional<NodeId> stuck) {
  ReductionGraph g;
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  g.witness_ = witness;
  g.stuck_ = stuck;
  g.index();
  return g;
}

void ReductionGraph::index() {
  const std::size_t n = nodes_.size();
  if (n == 0) throw std::invalid_argument("graph has no nodes");
  if (witness_ >= n) throw std::invalid_argument("witness node out of range");
  if (stuck_ && *stuck_ >= n) throw std::invalid_argument("stuck node out of range");
  out_.assign(n, std::nullopt);
  in_.assign(n, std::nullopt);
  by_key_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes_[i].id != i) throw std::invalid_argument("node ids must be dense and ordered");
    for (const CallSite& c : nodes_[i].calls)
      if (c.node >= n) throw std::invalid_argument("call site out of range");
    if (!by_key_.emplace(std::make_pair(nodes_[i].path, nodes_[i].version), nodes_[i].id).second)
      throw std::invalid_argument("duplicate node occurrence");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const GraphEdge& e = edges_[i];
    if (e.from >= n || e.to >= n) throw std::invalid_argument("edge endpoint out of range");
    if (out_[e.from] || in_[e.to]) throw std::invalid_argument("node with two edges in one direction");
    if (nodes_[e.from].path != nodes_[e.to].path)
      throw std::invalid_argument("edge joins different positions");
    if (nodes_[e.from].version >= nodes_[e.to].version)
      throw std::invalid_argument("edge does not advance the version");
    out_[e.from] = i;
    in_[e.to] = i;
  }
}

NodeId ReductionGraph::terminal() const { return main_path().back(); }

const GraphEdge* ReductionGraph::out_edge(NodeId id) const {
  return id < out_.size() && out_[id] ? &edges_[*out_[id]] : nullptr;
}

const GraphEdge* ReductionGraph::in_edge(NodeId id) const {
  return id < in_.size() && in_[id] ? &edges_[*in_[id]] : nullptr;
}

std::optional<NodeId> ReductionGraph::succ(NodeId id) const {
  if (const GraphEdge* e = out_edge(id)) return e->to;
  return std::nullopt;
}

std::optional<NodeId> ReductionGraph::pred(NodeId id) const {
  if (const GraphEdge* e = in_edge(id)) return e->from;
  return std::nullopt;
}

std::optional<NodeId> ReductionGraph::find(const Path& path, std::uint32_t version) const {
  auto it = by_key_.find({path, version});
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

bool ReductionGraph::is_boundary(NodeId id) const {
  const GraphEdge* out = out_edge(id);
  const GraphEdge* in = in_edge(id);
  return (out && out->step_kind == StepKind::Call) || (in && in->returns);
}

std::vector<NodeId> ReductionGraph::main_path() const {
  std::vector<NodeId> path{witness_};
  while (auto next = succ(path.back())) path.push_back(*next);
  return path;
}

std::optional<NodeId> ReductionGraph::return_of(NodeId call) const {
  std::optional<NodeId> cur = succ(call);
  while (cur) {
    if (nodes_[*cur].value) return cur;
    cur = succ(*cur);
  }
  return std::nullopt;
}

NodeId ReductionGraph::exit_of(NodeId call) const {
  if (auto r = return_of(call)) return *r;
  NodeId cur = call;
  while (auto next = succ(cur)) cur = *next;
  return cur;
}

// ---------------------------------------------------------------------------
// build_graph

namespace {

constexpr std::uint32_t kForever = std::numeric_limits<std::uint32_t>::max();

bool is_prefix(const Path& prefix, const Path& path) {
  return prefix.size() <= path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

Path relative(const Path& base, const Path& path) {
  return Path(path.begin() + static_cast<std::ptrdiff_t>(base.size()), path.end());
}

StepKind kind_of_redex(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::App: return StepKind::Call;
    case ExprKind::If: return StepKind::Cond;
    case ExprKind::Match:
    case ExprKind::Let:
    case ExprKind::LetRec:
      return StepKind::Match;
    default: return StepKind::Prim;
  }
}

class Builder {
 public:
  explicit Builder(const Subst& s) : subst_(s) {}

  NodeId node(const Path& path, std::uint32_t version, const ExprPtr& expr) {
    auto key = std::make_pair(path, version);
    auto it = keys_.find(key);
    if (it != keys_.end()) return it->second;
    GraphNode n;
    n.id = static_cast<NodeId>(nodes_.size());
    n.path = path;
    n.version = version;
    n.expr = resolve(expr, subst_);
    n.value = is_value(n.expr);
    n.span = expr->span;
    nodes_.push_back(std::move(n));
    keys_.emplace(std::move(key), nodes_.back().id);
    lines_[path].push_back(nodes_.back().id);
    return nodes_.back().id;
  }

  // Version at which the current occurrence at `path` appeared.
  std::uint32_t born(const Path& path) const {
    std::uint32_t best = 0;
    if (auto it = inside_.find(path); it != inside_.end()) best = it->second;
    Path prefix;
    for (std::size_t d = 0; d <= path.size(); ++d) {
      if (auto it = at_.find(prefix); it != at_.end()) best = std::max(best, it->second);
      if (d < path.size()) prefix.push_back(path[d]);
    }
    return best;
  }

  void touched(const Path& redex, std::uint32_t step) {
    Path prefix;
    for (std::size_t d = 0; d <= redex.size(); ++d) {
      inside_[prefix] = step + 1;
      if (d < redex.size()) prefix.push_back(redex[d]);
    }
    at_[redex] = step + 1;
  }

  void edge(NodeId from, NodeId to, EdgeKind kind, std::uint32_t step, const StepEvent* ev) {
    GraphEdge e;
    e.from = from;
    e.to = to;
    e.kind = kind;
    e.step = step;
    if (ev) {
      e.step_kind = ev->kind;
      e.returns = ev->returns;
    }
    edges_.push_back(e);
  }

  const Subst& subst_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::map<std::pair<Path, std::uint32_t>, NodeId> keys_;
  std::map<Path, std::vector<NodeId>> lines_;
  std::map<Path, std::uint32_t> inside_;
  std::map<Path, std::uint32_t> at_;
};

void set_highlight(GraphNode& n, const Path& rel) {
  Highlighted h = pretty_highlight(n.expr, rel);
  n.label = std::move(h.text);
  n.highlight_begin = h.begin;
  n.highlight_end = h.end;
}

}  // namespace

ReductionGraph build_graph(const ExprPtr& initial, const std::vector<StepEvent>& trace,
                           const Subst& final_subst, const std::optional<Outcome>& stuck) {
  Builder b(final_subst);
  const NodeId witness = b.node({}, 0, initial);
  std::vector<Path> redex_paths;
  struct CallStep {
    NodeId node;
    Path path;
    std::uint32_t step;
  };
  std::vector<CallStep> calls;

  NodeId last_root = witness;
  for (std::uint32_t i = 0; i < trace.size(); ++i) {
    const StepEvent& ev = trace[i];
    const Path& r = ev.redex_path;
    NodeId before = b.node({}, i, ev.whole_before);
    NodeId after = b.node({}, i + 1, ev.whole_after);
    EdgeKind root_kind = ev.kind == StepKind::Call ? EdgeKind::Call
                         : ev.returns              ? EdgeKind::Return
                                                   : EdgeKind::Single;
    b.edge(before, after, root_kind, i, &ev);
    for (const ContextEdge& c : ev.context_chain) {
      NodeId cb = b.node(c.path, b.born(c.path), c.before);
      NodeId ca = b.node(c.path, i + 1, c.after);
      b.edge(cb, ca, EdgeKind::Subterm, i, &ev);
    }
    NodeId redex = before;
    if (!r.empty()) {
      redex = b.node(r, b.born(r), ev.redex_before);
      NodeId contractum = b.node(r, i + 1, ev.redex_after);
      b.edge(redex, contractum, EdgeKind::Subterm, i, &ev);
    }
    if (ev.kind == StepKind::Call) calls.push_back({redex, r, i});
    b.touched(r, i);
    redex_paths.push_back(r);
    last_root = after;
  }

  std::optional<NodeId> stuck_id;
  const std::uint32_t n = static_cast<std::uint32_t>(trace.size());
  if (stuck) {
    stuck_id = b.node({}, n + 1, stuck->term);
    GraphNode& sn = b.nodes_[*stuck_id];
    sn.stuck = true;
    sn.value = false;
    sn.span = stuck->span;
    GraphEdge e;
    e.from = last_root;
    e.to = *stuck_id;
    e.kind = EdgeKind::Single;
    e.step = n;
    e.step_kind = kind_of_redex(stuck->term);
    b.edges_.push_back(e);
    redex_paths.push_back(stuck->path);
  }

  std::vector<std::uint32_t> death(b.nodes_.size(), kForever);
  std::vector<bool> labelled(b.nodes_.size(), false);
  for (const GraphEdge& e : b.edges_) {
    death[e.from] = e.step;
    GraphNode& from = b.nodes_[e.from];
    const Path& r = redex_paths[e.step];
    set_highlight(from, is_prefix(from.path, r) ? relative(from.path, r) : Path{});
    if (e.to == stuck_id) from.span = stuck->span;
    else if (e.step < trace.size()) from.span = trace[e.step].redex_span;
    labelled[e.from] = true;
  }
  for (GraphNode& node : b.nodes_) {
    if (labelled[node.id]) continue;
    if (node.stuck) {
      set_highlight(node, {});
    } else {
      node.label = pretty(node.expr);
      node.highlight_begin = node.highlight_end = 0;
    }
  }

  for (const CallStep& c : calls) {
    const std::uint32_t call_born = b.nodes_[c.node].version;
    Path prefix;
    for (std::size_t d = 0; d <= c.path.size(); ++d) {
      auto line = b.lines_.find(prefix);
      if (line != b.lines_.end()) {
        for (NodeId id : line->second) {
          GraphNode& holder = b.nodes_[id];
          if (holder.stuck) continue;
          if (holder.version <= c.step && call_born <= death[id])
            holder.calls.push_back(CallSite{relative(prefix, c.path), c.node});
        }
      }
      if (d < c.path.size()) prefix.push_back(c.path[d]);
    }
  }
  for (GraphNode& node : b.nodes_) {
    std::sort(node.calls.begin(), node.calls.end(), [](const CallSite& x, const CallSite& y) {
      return x.path != y.path ? x.path < y.path : x.node < y.node;
    });
  }

  return ReductionGraph::from_parts(std::move(b.nodes_), std::move(b.edges_), witness, stuck_id);
}

ReductionGraph build_graph(const Witness& w) {
  Outcome o;
  o.kind = OutcomeKind::Stuck;
  o.term = w.stuck_term;
  o.span = w.stuck_span;
  o.path = w.stuck_path;
  o.detail = w.conflict;
  return build_graph(w.initial, w.trace, w.subst, o);
}

std::vector<NodeId> jump_compress(const ReductionGraph& g) {
  std::vector<NodeId> path = g.main_path();
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i == 0 || i + 1 == path.size() || g.is_boundary(path[i])) out.push_back(path[i]);
  }
  return out;
}

std::size_t full_size(const ReductionGraph& g) { return g.nodes().size(); }

// ---------------------------------------------------------------------------
// Traversal

namespace {

struct Location {
  std::size_t chain;
  std::size_t pos;
};

std::optional<Location> locate(const VisState& s, NodeId n) {
  for (std::size_t c = 0; c < s.chains.size(); ++c) {
    const auto& nodes = s.chains[c].nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == n) return Location{c, i};
  }
  return std::nullopt;
}

Location require_visible(const VisState& s, const ReductionGraph& g, NodeId n) {
  if (!g.contains(n))
    throw TraversalError(TraversalError::Kind::UnknownNode, "no node " + std::to_string(n));
  auto loc = locate(s, n);
  if (!loc)
    throw TraversalError(TraversalError::Kind::NodeNotVisible,
                         "node " + std::to_string(n) + " is not visible");
  return *loc;
}

CommandResult unchanged(const VisState& s, NodeId focus, std::string notice) {
  CommandResult r;
  r.state = s;
  r.state.focus = focus;
  r.notice = std::move(notice);
  return r;
}

CommandResult insert(const VisState& s, const ReductionGraph& g, std::size_t chain, NodeId from,
                     NodeId x) {
  if (is_visible(s, x))
    return unchanged(s, from, "node " + std::to_string(x) + " is already visible");
  CommandResult r;
  r.state = s;
  auto& nodes = r.state.chains[chain].nodes;
  const std::uint32_t v = g.node(x).version;
  auto at = std::find_if(nodes.begin(), nodes.end(),
                         [&](NodeId m) { return g.node(m).version > v; });
  nodes.insert(at, x);
  r.state.focus = x;
  r.inserted = x;
  return r;
}

const CallSite& require_call(const ReductionGraph& g, NodeId n, NodeId call) {
  if (!g.contains(call))
    throw TraversalError(TraversalError::Kind::UnknownNode, "no node " + std::to_string(call));
  for (const CallSite& c : g.node(n).calls)
    if (c.node == call) return c;
  throw TraversalError(TraversalError::Kind::NotACall,
                       "node " + std::to_string(call) + " is not a call inside node " +
                           std::to_string(n));
}

}  // namespace

VisState initial_state(const ReductionGraph& g) {
  VisState s;
  Chain c;
  c.nodes.push_back(g.witness());
  NodeId t = g.terminal();
  if (t != g.witness()) c.nodes.push_back(t);
  s.chains.push_back(std::move(c));
  s.focus = g.witness();
  return s;
}

std::vector<bool> thickness(const ReductionGraph& g, const Chain& c) {
  std::vector<bool> out;
  for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i) out.push_back(g.succ(c.nodes[i]) != c.nodes[i + 1]);
  return out;
}

bool is_visible(const VisState& s, NodeId n) { return locate(s, n).has_value(); }

CommandResult step_forward(const VisState& s, const ReductionGraph& g, NodeId n) {
  Location loc = require_visible(s, g, n);
  auto next = g.succ(n);
  if (!next) return unchanged(s, n, "no later step");
  return insert(s, g, loc.chain, n, *next);
}

CommandResult step_backward(const VisState& s, const ReductionGraph& g, NodeId n) {
  Location loc = require_visible(s, g, n);
  auto prev = g.pred(n);
  if (!prev) return unchanged(s, n, "no earlier step");
  return insert(s, g, loc.chain, n, *prev);
}

CommandResult jump_forward(const VisState& s, const ReductionGraph& g, NodeId n) {
  Location loc = require_visible(s, g, n);
  auto cur = g.succ(n);
  if (!cur) return unchanged(s, n, "no later step");
  while (!g.is_boundary(*cur)) {
    auto next = g.succ(*cur);
    if (!next) break;
    cur = next;
  }
  return insert(s, g, loc.chain, n, *cur);
}

CommandResult jump_backward(const VisState& s, const ReductionGraph& g, NodeId n) {
  Location loc = require_visible(s, g, n);
  auto cur = g.pred(n);
  if (!cur) return unchanged(s, n, "no earlier step");
  while (!g.is_boundary(*cur)) {
    auto prev = g.pred(*cur);
    if (!prev) break;
    cur = prev;
  }
  return insert(s, g, loc.chain, n, *cur);
}

CommandResult step_into(const VisState& s, const ReductionGraph& g, NodeId n, NodeId call) {
  require_visible(s, g, n);
  require_call(g, n, call);
  if (is_visible(s, call)) return unchanged(s, call, "call is already visible");
  CommandResult r;
  r.state = s;
  Chain c;
  c.nodes.push_back(call);
  NodeId exit = g.exit_of(call);
  if (exit != call && !is_visible(s, exit)) c.nodes.push_back(exit);
  r.state.chains.push_back(std::move(c));
  r.state.focus = call;
  r.inserted = call;
  return r;
}

CommandResult step_over(const VisState& s, const ReductionGraph& g, NodeId n, NodeId call) {
  Location loc = require_visible(s, g, n);
  require_call(g, n, call);
  auto ret = g.return_of(call);
  if (!ret)
    throw TraversalError(TraversalError::Kind::CallNeverReturns,
                         "call " + std::to_string(call) + " never returns; step into it instead");
  const std::uint32_t v = g.node(*ret).version;
  NodeId cur = n;
  while (g.node(cur).version < v) {
    auto next = g.succ(cur);
    if (!next) break;
    cur = *next;
  }
  if (cur == n) return unchanged(s, n, "call has already returned");
  return insert(s, g, loc.chain, n, cur);
}

CommandResult apply_command(const VisState& s, const ReductionGraph& g, Command c, NodeId n,
                            std::optional<NodeId> call) {
  switch (c) {
    case Command::StepForward: return step_forward(s, g, n);
    case Command::StepBackward: return step_backward(s, g, n);
    case Command::JumpForward: return jump_forward(s, g, n);
    case Command::JumpBackward: return jump_backward(s, g, n);
    case Command::StepInto:
    case Command::StepOver:
      if (!call)
        throw TraversalError(TraversalError::Kind::NotACall, "no call subterm selected");
      return c == Command::StepInto ? step_into(s, g, n, *call) : step_over(s, g, n, *call);
  }
  return unchanged(s, n, "");
}

}  // namespace witness
