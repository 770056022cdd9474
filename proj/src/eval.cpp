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

#include "witness/eval.hpp"

#include <algorithm>
#include <utility>

namespace witness {

std::int64_t Rng::small_int() {
  static constexpr std::int64_t kTable[9] = {-3, -2, -1, 0, 0, 1, 1, 2, 3};
  return kTable[engine_() % 9];
}

bool Rng::coin() { return (engine_() >> 63) != 0; }

bool Rng::grow() { return engine_() % 3 < 2; }

ExprPtr gen(const TypePtr& t, const TypeSubst& theta, HoleSupply& holes, Rng& rng, Span span,
            int depth) {
  TypePtr r = resolve(t, theta);
  switch (r->kind) {
    case TypeKind::Int:
      return mk_int(rng.small_int(), span);
    case TypeKind::Bool:
      return mk_bool(rng.coin(), span);
    case TypeKind::Fun: {
      HoleId v = holes.fresh();
      HoleId a = holes.fresh();
      return mk_lam("x", mk_hole(v, t_hole(a), span), span);
    }
    case TypeKind::Prod: {
      ExprPtr first = gen(r->first, theta, holes, rng, span, depth);
      ExprPtr second = gen(r->second, theta, holes, rng, span, depth);
      return mk_pair(first, second, span);
    }
    case TypeKind::List: {
      std::vector<ExprPtr> items;
      if (depth < kMaxGenDepth) {
        while (items.size() < kMaxGenLength && rng.grow())
          items.push_back(gen(r->first, theta, holes, rng, span, depth + 1));
      }
      return mk_list(r->first, std::move(items), span);
    }
    case TypeKind::Tree: {
      if (depth >= kMaxGenDepth || !rng.coin()) return mk_leaf(r->first, span);
      ExprPtr v = gen(r->first, theta, holes, rng, span, depth + 1);
      ExprPtr l = gen(r, theta, holes, rng, span, depth + 1);
      ExprPtr rr = gen(r, theta, holes, rng, span, depth + 1);
      return mk_node_value(r->first, v, l, rr, span);
    }
    case TypeKind::Hole:
      return mk_hole(holes.fresh(), r, span);
    case TypeKind::Generic: {
      HoleId v = holes.fresh();
      return mk_hole(v, t_hole(holes.fresh()), span);
    }
  }
  return mk_hole(holes.fresh(), r, span);
}

std::optional<ExprPtr> narrow(const ExprPtr& v, const TypePtr& t, Subst& s, HoleSupply& holes,
                              Rng& rng) {
  if (v->kind == ExprKind::Hole) {
    auto bound = s.values.find(v->hole);
    if (bound != s.values.end()) {
      auto theta = unify({type_of(bound->second), t, v->type}, s.types);
      if (!theta) return std::nullopt;
      s.types = std::move(*theta);
      return bound->second;
    }
    auto theta = unify({v->type, t}, s.types);
    if (!theta) return std::nullopt;
    TypePtr target = resolve(t, *theta);
    if (target->kind == TypeKind::Hole) {
      // Nothing is known yet; the hole stays as it is.
      s.types = std::move(*theta);
      return v;
    }
    ExprPtr w = gen(target, *theta, holes, rng, v->span);
    s.types = std::move(*theta);
    bind_value(s.values, v->hole, w);
    return w;
  }
  if (!is_value(v)) return std::nullopt;
  auto theta = unify({type_of(v), t}, s.types);
  if (!theta) return std::nullopt;
  s.types = std::move(*theta);
  return v;
}

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Prim: return "prim";
    case StepKind::Call: return "call";
    case StepKind::Match: return "match";
    case StepKind::Cond: return "cond";
  }
  return "prim";
}

const char* outcome_kind_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Value: return "value";
    case OutcomeKind::Stuck: return "stuck";
    case OutcomeKind::UnboundVariable: return "unbound-variable";
    case OutcomeKind::InfiniteRecursion: return "infinite-recursion";
    case OutcomeKind::StepLimit: return "step-limit";
    case OutcomeKind::Ambiguous: return "ambiguous";
  }
  return "value";
}

const char* conflict_name(Conflict c) {
  switch (c) {
    case Conflict::TypeClash: return "type-clash";
    case Conflict::DivByZero: return "div-by-zero";
    case Conflict::MatchFailure: return "match-failure";
  }
  return "type-clash";
}

ExprPtr subterm(const ExprPtr& e, const Path& path) {
  ExprPtr cur = e;
  for (auto i : path) {
    if (i >= cur->kids.size()) return nullptr;
    cur = cur->kids[i];
  }
  return cur;
}

bool same_shape(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->num != b->num || a->op != b->op ||
      a->hole != b->hole || a->def != b->def || a->kids.size() != b->kids.size())
    return false;
  bool labelled =
      a->kind == ExprKind::List || a->kind == ExprKind::Leaf || a->kind == ExprKind::NodeValue;
  if (!labelled && a->kind == ExprKind::Hole && !type_equal(a->type, b->type)) return false;
  if (a->patterns.size() != b->patterns.size()) return false;
  for (std::size_t i = 0; i < a->patterns.size(); ++i)
    if (!pattern_equal(a->patterns[i], b->patterns[i])) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!same_shape(a->kids[i], b->kids[i])) return false;
  return true;
}

bool check_infinite_recursion(const std::vector<Frame>& frames, const FunDefPtr& def,
                              const std::vector<ExprPtr>& args, const Subst& s) {
  for (const Frame& f : frames) {
    if (f.def != def || f.args.size() != args.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < args.size() && same; ++i)
      same = same_shape(resolve(f.args[i], s), resolve(args[i], s));
    if (same) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Stepper

struct Stepper::Contracted {
  ExprPtr result;
  std::optional<Outcome> terminal;
  StepKind kind = StepKind::Prim;
  std::optional<Frame> frame;
};

namespace {

using Contracted = Stepper::Contracted;

Contracted reduced(ExprPtr result, StepKind kind) {
  Contracted c;
  c.result = std::move(result);
  c.kind = kind;
  return c;
}

Contracted terminal(Outcome o) {
  Contracted c;
  c.terminal = std::move(o);
  return c;
}

Contracted stuck(const ExprPtr& term, Span span, const Subst& work, Conflict conflict,
                 std::string detail) {
  Outcome o;
  o.kind = OutcomeKind::Stuck;
  o.term = resolve(term, work);
  o.span = span;
  o.conflict = conflict;
  o.detail = std::move(detail);
  return terminal(std::move(o));
}

bool is_prefix(const Path& prefix, const Path& path) {
  return prefix.size() <= path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

std::string describe(const ExprPtr& v, const TypePtr& expected, const Subst& s) {
  return "expected " + type_to_string(resolve(expected, s.types)) + " but got " +
         type_to_string(resolve(type_of(v), s.types));
}

enum class PatternResult { Match, NoMatch, Clash };

}  // namespace

Stepper::Stepper(ExprPtr expr, Subst subst, HoleSupply holes, std::uint64_t seed)
    : subst_(std::move(subst)), holes_(holes), rng_(seed) {
  expr_ = instantiate_labels(expr, holes_);
}

bool Stepper::find_into(const ExprPtr& e, Path& path) const {
  if (is_value(e)) return false;
  auto descend = [&](std::size_t i) {
    path.push_back(static_cast<std::uint32_t>(i));
    find_into(e->kids[i], path);
    return true;
  };
  switch (e->kind) {
    case ExprKind::App:
      if (!is_value(e->kids[0])) return descend(0);
      if (!is_value(e->kids[1])) return descend(1);
      return true;
    case ExprKind::Prim:
      if (!is_value(e->kids[0])) return descend(0);
      if (e->op == PrimOp::And || e->op == PrimOp::Or) {
        ExprPtr lhs = lookup_root(e->kids[0], subst_.values);
        const bool proceed = e->op == PrimOp::And;
        if (lhs->kind == ExprKind::Bool && (lhs->num != 0) == proceed && !is_value(e->kids[1]))
          return descend(1);
        return true;
      }
      if (!is_value(e->kids[1])) return descend(1);
      return true;
    case ExprKind::Pair:
    case ExprKind::NodeCtor:
      for (std::size_t i = 0; i < e->kids.size(); ++i)
        if (!is_value(e->kids[i])) return descend(i);
      return true;
    case ExprKind::If:
    case ExprKind::Match:
    case ExprKind::Let:
      if (!is_value(e->kids[0])) return descend(0);
      return true;
    default:
      return true;
  }
}

std::optional<Path> Stepper::find_redex(const ExprPtr& e) const {
  Path path;
  if (!find_into(e, path)) return std::nullopt;
  return path;
}

Stepper::Contracted Stepper::contract(const ExprPtr& redex, const Path& path) {
  Subst work = subst_;
  Contracted c;
  switch (redex->kind) {
    case ExprKind::Var: {
      Outcome o;
      o.kind = OutcomeKind::UnboundVariable;
      o.term = redex;
      o.span = redex->span;
      o.detail = redex->name;
      c = terminal(std::move(o));
      break;
    }
    case ExprKind::App:
      c = contract_app(redex, path, work);
      break;
    case ExprKind::Prim:
      c = is_comparison(redex->op) ? contract_compare(redex, work) : contract_prim(redex, work);
      break;
    case ExprKind::If: {
      auto cond = narrow(redex->kids[0], t_bool(), work, holes_, rng_);
      if (!cond) {
        c = stuck(redex, redex->span, work, Conflict::TypeClash,
                  "condition " + describe(redex->kids[0], t_bool(), work));
        break;
      }
      c = reduced((*cond)->num ? redex->kids[1] : redex->kids[2], StepKind::Cond);
      break;
    }
    case ExprKind::NodeCtor: {
      HoleId a = holes_.fresh();
      TypePtr tree = t_tree(t_hole(a));
      auto l = narrow(redex->kids[1], tree, work, holes_, rng_);
      if (!l) {
        c = stuck(redex, redex->span, work, Conflict::TypeClash,
                  "left subtree " + describe(redex->kids[1], tree, work));
        break;
      }
      auto r = narrow(redex->kids[2], tree, work, holes_, rng_);
      if (!r) {
        c = stuck(mk_node_ctor(redex->kids[0], *l, redex->kids[2], redex->span), redex->span, work,
                  Conflict::TypeClash, "right subtree " + describe(redex->kids[2], tree, work));
        break;
      }
      auto v = narrow(redex->kids[0], t_hole(a), work, holes_, rng_);
      if (!v) {
        c = stuck(mk_node_ctor(redex->kids[0], *l, *r, redex->span), redex->span, work,
                  Conflict::TypeClash, "node value " + describe(redex->kids[0], t_hole(a), work));
        break;
      }
      c = reduced(mk_node_value(t_hole(a), *v, *l, *r, redex->span), StepKind::Prim);
      break;
    }
    case ExprKind::Match:
      c = contract_match(redex, work);
      break;
    case ExprKind::Let:
      c = reduced(substitute(redex->kids[1], {{redex->name, redex->kids[0]}}), StepKind::Match);
      break;
    case ExprKind::LetRec: {
      auto def = std::make_shared<FunDef>();
      def->name = redex->name;
      def->recursive = redex->num != 0;
      def->params = redex->params;
      def->param_spans = redex->param_spans;
      def->body = redex->kids[0];
      def->span = redex->span;
      c = reduced(substitute(redex->kids[1], {{redex->name, mk_funref(def, redex->span)}}, true),
                  StepKind::Match);
      break;
    }
    default:
      c = stuck(redex, redex->span, work, Conflict::TypeClash, "irreducible term");
      break;
  }
  subst_ = std::move(work);
  return c;
}

Stepper::Contracted Stepper::contract_app(const ExprPtr& redex, const Path& path, Subst& work) {
  ExprPtr head;
  std::vector<ExprPtr> args = spine_args(redex, &head);
  if (head->kind == ExprKind::FunRef && args.size() == arity(*head->def)) {
    const FunDefPtr& def = head->def;
    if (def->recursive && check_infinite_recursion(frames_, def, args, work)) {
      Outcome o;
      o.kind = OutcomeKind::InfiniteRecursion;
      o.term = resolve(redex, work);
      o.span = redex->span;
      o.detail = def->name;
      return terminal(std::move(o));
    }
    std::map<std::string, ExprPtr> env;
    for (std::size_t i = 0; i < args.size(); ++i) env[def->params[i]] = args[i];
    ExprPtr body = substitute(def->body, env);
    if (def->recursive && !env.count(def->name))
      body = substitute(body, {{def->name, mk_funref(def, def->span)}}, true);
    Contracted c = reduced(instantiate_labels(body, holes_), StepKind::Call);
    c.frame = Frame{path, def, def->name, args};
    return c;
  }

  ExprPtr fn = redex->kids[0];
  const ExprPtr& arg = redex->kids[1];
  if (fn->kind != ExprKind::Lam) {
    auto n = narrow(fn, t_fun(), work, holes_, rng_);
    if (!n) {
      return stuck(redex, redex->span, work, Conflict::TypeClash,
                   "callee " + describe(fn, t_fun(), work));
    }
    fn = *n;
    if (fn->kind != ExprKind::Lam) {
      ExprPtr app = mk_app(fn, arg, redex->span);
      if (is_value(app)) return reduced(app, StepKind::Prim);
      return contract_app(app, path, work);
    }
  }
  ExprPtr body = substitute(fn->kids[0], {{fn->name, arg}});
  Contracted c = reduced(instantiate_labels(body, holes_), StepKind::Call);
  c.frame = Frame{path, nullptr, "fun", {arg}};
  return c;
}

namespace {

std::int64_t wrap(__int128 v) { return static_cast<std::int64_t>(static_cast<std::uint64_t>(v)); }

}  // namespace

Stepper::Contracted Stepper::contract_prim(const ExprPtr& redex, Subst& work) {
  const ExprPtr& lhs = redex->kids[0];
  const ExprPtr& rhs = redex->kids[1];
  const Span span = redex->span;
  const char* sym = prim_symbol(redex->op);

  if (redex->op == PrimOp::And || redex->op == PrimOp::Or) {
    const bool shortcut = redex->op == PrimOp::Or;
    auto l = narrow(lhs, t_bool(), work, holes_, rng_);
    if (!l) {
      return stuck(redex, span, work, Conflict::TypeClash,
                   std::string("left operand of ") + sym + " " + describe(lhs, t_bool(), work));
    }
    if (((*l)->num != 0) == shortcut) return reduced(mk_bool(shortcut, span), StepKind::Prim);
    if (lookup_root(lhs, subst_.values)->kind == ExprKind::Hole)
      return reduced(with_kid(redex, 0, *l), StepKind::Prim);
    auto r = narrow(rhs, t_bool(), work, holes_, rng_);
    if (!r) {
      return stuck(mk_prim(redex->op, *l, rhs, span), span, work, Conflict::TypeClash,
                   std::string("right operand of ") + sym + " " + describe(rhs, t_bool(), work));
    }
    return reduced(mk_bool((*r)->num != 0, span), StepKind::Prim);
  }

  if (redex->op == PrimOp::Cons) {
    HoleId a = holes_.fresh();
    TypePtr list = t_list(t_hole(a));
    auto tail = narrow(rhs, list, work, holes_, rng_);
    if (!tail) {
      return stuck(redex, span, work, Conflict::TypeClash, "tail of :: " + describe(rhs, list, work));
    }
    auto head = narrow(lhs, t_hole(a), work, holes_, rng_);
    if (!head) {
      return stuck(mk_prim(PrimOp::Cons, lhs, *tail, span), span, work, Conflict::TypeClash,
                   "head of :: " + describe(lhs, t_hole(a), work));
    }
    std::vector<ExprPtr> items{*head};
    items.insert(items.end(), (*tail)->kids.begin(), (*tail)->kids.end());
    return reduced(mk_list(t_hole(a), std::move(items), span), StepKind::Prim);
  }

  if (redex->op == PrimOp::Append) {
    HoleId a = holes_.fresh();
    TypePtr list = t_list(t_hole(a));
    auto l = narrow(lhs, list, work, holes_, rng_);
    if (!l) {
      return stuck(redex, span, work, Conflict::TypeClash,
                   "left operand of @ " + describe(lhs, list, work));
    }
    auto r = narrow(rhs, list, work, holes_, rng_);
    if (!r) {
      return stuck(mk_prim(PrimOp::Append, *l, rhs, span), span, work, Conflict::TypeClash,
                   "right operand of @ " + describe(rhs, list, work));
    }
    std::vector<ExprPtr> items = (*l)->kids;
    items.insert(items.end(), (*r)->kids.begin(), (*r)->kids.end());
    return reduced(mk_list(t_hole(a), std::move(items), span), StepKind::Prim);
  }

  auto l = narrow(lhs, t_int(), work, holes_, rng_);
  if (!l) {
    return stuck(redex, span, work, Conflict::TypeClash,
                 std::string("left operand of ") + sym + " " + describe(lhs, t_int(), work));
  }
  auto r = narrow(rhs, t_int(), work, holes_, rng_);
  if (!r) {
    return stuck(mk_prim(redex->op, *l, rhs, span), span, work, Conflict::TypeClash,
                 std::string("right operand of ") + sym + " " + describe(rhs, t_int(), work));
  }
  __int128 a = (*l)->num, b = (*r)->num;
  std::int64_t value = 0;
  switch (redex->op) {
    case PrimOp::Add: value = wrap(a + b); break;
    case PrimOp::Sub: value = wrap(a - b); break;
    case PrimOp::Mul: value = wrap(a * b); break;
    case PrimOp::Div:
    case PrimOp::Mod:
      if (b == 0) {
        return stuck(mk_prim(redex->op, *l, *r, span), span, work, Conflict::DivByZero,
                     "division by zero");
      }
      value = wrap(redex->op == PrimOp::Div ? a / b : a % b);
      break;
    default:
      break;
  }
  return reduced(mk_int(value, span), StepKind::Prim);
}

namespace {

enum class Cmp { Ok, Clash, Ambiguous };

struct Comparison {
  Cmp status = Cmp::Ok;
  int order = 0;
};

Comparison compare_values(const ExprPtr& x0, const ExprPtr& y0, Subst& work, HoleSupply& holes,
                          Rng& rng) {
  ExprPtr x = lookup_root(x0, work.values);
  ExprPtr y = lookup_root(y0, work.values);
  bool hx = x->kind == ExprKind::Hole, hy = y->kind == ExprKind::Hole;
  if (hx && hy) return {Cmp::Ambiguous, 0};
  if (hx || hy) {
    const ExprPtr& hole = hx ? x : y;
    const ExprPtr& other = hx ? y : x;
    auto n = narrow(hole, type_of(other), work, holes, rng);
    if (!n) return {Cmp::Clash, 0};
    if ((*n)->kind == ExprKind::Hole) return {Cmp::Ambiguous, 0};
    return hx ? compare_values(*n, y, work, holes, rng) : compare_values(x, *n, work, holes, rng);
  }
  if (is_function_value(x) || is_function_value(y)) return {Cmp::Clash, 0};
  if (x->kind != y->kind) {
    bool trees = (x->kind == ExprKind::Leaf || x->kind == ExprKind::NodeValue) &&
                 (y->kind == ExprKind::Leaf || y->kind == ExprKind::NodeValue);
    if (!trees) return {Cmp::Clash, 0};
    return {Cmp::Ok, x->kind == ExprKind::Leaf ? -1 : 1};
  }
  switch (x->kind) {
    case ExprKind::Int:
    case ExprKind::Bool:
      return {Cmp::Ok, x->num < y->num ? -1 : (x->num > y->num ? 1 : 0)};
    case ExprKind::Pair:
    case ExprKind::NodeValue:
    case ExprKind::List: {
      std::size_t n = std::min(x->kids.size(), y->kids.size());
      for (std::size_t i = 0; i < n; ++i) {
        Comparison c = compare_values(x->kids[i], y->kids[i], work, holes, rng);
        if (c.status != Cmp::Ok || c.order != 0) return c;
      }
      if (x->kids.size() == y->kids.size()) return {Cmp::Ok, 0};
      return {Cmp::Ok, x->kids.size() < y->kids.size() ? -1 : 1};
    }
    case ExprKind::Leaf:
      return {Cmp::Ok, 0};
    default:
      return {Cmp::Clash, 0};
  }
}

}  // namespace

Stepper::Contracted Stepper::contract_compare(const ExprPtr& redex, Subst& work) {
  const Span span = redex->span;
  ExprPtr x = lookup_root(redex->kids[0], work.values);
  ExprPtr y = lookup_root(redex->kids[1], work.values);
  if (x->kind == ExprKind::Hole && y->kind == ExprKind::Hole) {
    Outcome o;
    o.kind = OutcomeKind::Ambiguous;
    o.term = resolve(redex, work);
    o.span = span;
    o.detail = "comparison of two unconstrained holes";
    return terminal(std::move(o));
  }
  if (x->kind == ExprKind::Hole || y->kind == ExprKind::Hole) {
    const ExprPtr& hole = x->kind == ExprKind::Hole ? x : y;
    const ExprPtr& other = x->kind == ExprKind::Hole ? y : x;
    auto n = narrow(hole, type_of(other), work, holes_, rng_);
    if (!n) {
      return stuck(redex, span, work, Conflict::TypeClash,
                   "comparison operand " + describe(hole, type_of(other), work));
    }
    (x->kind == ExprKind::Hole ? x : y) = *n;
  }
  auto theta = unify({type_of(x), type_of(y)}, work.types);
  if (!theta) {
    return stuck(mk_prim(redex->op, x, y, span), span, work, Conflict::TypeClash,
                 "comparison of " + type_to_string(resolve(type_of(x), work.types)) + " with " +
                     type_to_string(resolve(type_of(y), work.types)));
  }
  work.types = std::move(*theta);
  Comparison c = compare_values(x, y, work, holes_, rng_);
  if (c.status == Cmp::Ambiguous) {
    Outcome o;
    o.kind = OutcomeKind::Ambiguous;
    o.term = resolve(mk_prim(redex->op, x, y, span), work);
    o.span = span;
    o.detail = "comparison of two unconstrained holes";
    return terminal(std::move(o));
  }
  if (c.status == Cmp::Clash) {
    return stuck(mk_prim(redex->op, x, y, span), span, work, Conflict::TypeClash,
                 "comparison of functional or incompatible values");
  }
  bool result = false;
  switch (redex->op) {
    case PrimOp::Eq: result = c.order == 0; break;
    case PrimOp::Ne: result = c.order != 0; break;
    case PrimOp::Lt: result = c.order < 0; break;
    case PrimOp::Le: result = c.order <= 0; break;
    case PrimOp::Gt: result = c.order > 0; break;
    case PrimOp::Ge: result = c.order >= 0; break;
    default: break;
  }
  return reduced(mk_bool(result, span), StepKind::Prim);
}

namespace {

PatternResult match_pattern(const PatternPtr& p, const ExprPtr& v, Subst& work, HoleSupply& holes,
                            Rng& rng, std::map<std::string, ExprPtr>& env) {
  switch (p->kind) {
    case PatKind::Wild:
      return PatternResult::Match;
    case PatKind::Var:
      env[p->name] = v;
      return PatternResult::Match;
    case PatKind::Int:
    case PatKind::Bool: {
      auto n = narrow(v, p->kind == PatKind::Int ? t_int() : t_bool(), work, holes, rng);
      if (!n) return PatternResult::Clash;
      return (*n)->num == p->num ? PatternResult::Match : PatternResult::NoMatch;
    }
    case PatKind::Pair: {
      TypePtr prod = t_prod(t_hole(holes.fresh()), t_hole(holes.fresh()));
      auto n = narrow(v, prod, work, holes, rng);
      if (!n) return PatternResult::Clash;
      PatternResult first = match_pattern(p->kids[0], (*n)->kids[0], work, holes, rng, env);
      if (first != PatternResult::Match) return first;
      return match_pattern(p->kids[1], (*n)->kids[1], work, holes, rng, env);
    }
    case PatKind::Nil:
    case PatKind::Cons: {
      auto n = narrow(v, t_list(t_hole(holes.fresh())), work, holes, rng);
      if (!n) return PatternResult::Clash;
      const ExprPtr& list = *n;
      if (p->kind == PatKind::Nil) {
        return list->kids.empty() ? PatternResult::Match : PatternResult::NoMatch;
      }
      if (list->kids.empty()) return PatternResult::NoMatch;
      PatternResult head = match_pattern(p->kids[0], list->kids[0], work, holes, rng, env);
      if (head != PatternResult::Match) return head;
      std::vector<ExprPtr> rest(list->kids.begin() + 1, list->kids.end());
      return match_pattern(p->kids[1], mk_list(list->type, std::move(rest), list->span), work,
                           holes, rng, env);
    }
    case PatKind::Leaf:
    case PatKind::Node: {
      auto n = narrow(v, t_tree(t_hole(holes.fresh())), work, holes, rng);
      if (!n) return PatternResult::Clash;
      const ExprPtr& tree = *n;
      if (p->kind == PatKind::Leaf) {
        return tree->kind == ExprKind::Leaf ? PatternResult::Match : PatternResult::NoMatch;
      }
      if (tree->kind != ExprKind::NodeValue) return PatternResult::NoMatch;
      for (std::size_t i = 0; i < 3; ++i) {
        PatternResult r = match_pattern(p->kids[i], tree->kids[i], work, holes, rng, env);
        if (r != PatternResult::Match) return r;
      }
      return PatternResult::Match;
    }
  }
  return PatternResult::NoMatch;
}

}  // namespace

Stepper::Contracted Stepper::contract_match(const ExprPtr& redex, Subst& work) {
  const ExprPtr& scrutinee = redex->kids[0];
  for (std::size_t i = 0; i < redex->patterns.size(); ++i) {
    std::map<std::string, ExprPtr> env;
    PatternResult r = match_pattern(redex->patterns[i], scrutinee, work, holes_, rng_, env);
    if (r == PatternResult::Clash) {
      return stuck(redex, redex->span, work, Conflict::TypeClash,
                   "cannot match a value of type " +
                       type_to_string(resolve(type_of(lookup_root(scrutinee, work.values)), work.types)) +
                       " against pattern " + pretty(redex->patterns[i]));
    }
    if (r == PatternResult::Match) return reduced(substitute(redex->kids[i + 1], env), StepKind::Match);
  }
  return stuck(redex, redex->span, work, Conflict::MatchFailure, "no case matches");
}

namespace {

ExprPtr replace_at(const ExprPtr& e, const Path& path, std::size_t depth, const ExprPtr& value,
                   std::vector<ExprPtr>* afters) {
  if (depth == path.size()) return value;
  ExprPtr kid = replace_at(e->kids[path[depth]], path, depth + 1, value, afters);
  ExprPtr out = with_kid(e, path[depth], kid);
  if (afters && depth > 0) (*afters)[depth] = out;
  return out;
}

}  // namespace

std::optional<Outcome> Stepper::step(StepEvent* event) {
  std::optional<Path> path = find_redex(expr_);
  if (!path) {
    Outcome o;
    o.kind = OutcomeKind::Value;
    o.term = expr_;
    o.span = expr_->span;
    return o;
  }
  ExprPtr redex = subterm(expr_, *path);
  Contracted c = contract(redex, *path);
  if (c.terminal) {
    c.terminal->path = *path;
    return c.terminal;
  }

  ExprPtr before = expr_;
  std::vector<ExprPtr> afters(path->size());
  expr_ = replace_at(expr_, *path, 0, c.result, event ? &afters : nullptr);
  if (c.frame) frames_.push_back(std::move(*c.frame));

  bool returns = false;
  while (!frames_.empty()) {
    const Frame& top = frames_.back();
    if (!is_prefix(top.path, *path)) break;
    ExprPtr sub = subterm(expr_, top.path);
    if (!sub || !is_value(sub)) break;
    frames_.pop_back();
    returns = true;
  }

  if (event) {
    event->whole_before = before;
    event->whole_after = expr_;
    event->redex_before = redex;
    event->redex_after = c.result;
    event->redex_path = *path;
    event->kind = c.kind;
    event->returns = returns;
    event->redex_span = redex->span;
    event->context_chain.clear();
    ExprPtr cur = before;
    for (std::size_t d = 1; d < path->size(); ++d) {
      cur = cur->kids[(*path)[d - 1]];
      event->context_chain.push_back(
          ContextEdge{Path(path->begin(), path->begin() + static_cast<std::ptrdiff_t>(d)), cur,
                      afters[d]});
    }
  }
  return std::nullopt;
}

RunResult run(const ExprPtr& e, const RunOptions& options, std::uint64_t seed, Subst subst,
              HoleSupply holes) {
  Stepper st(e, std::move(subst), holes, seed);
  RunResult r;
  const bool want_event = options.record || static_cast<bool>(options.observer);
  for (;;) {
    if (r.steps >= options.step_limit) {
      if (is_value(st.expr())) {
        r.outcome.kind = OutcomeKind::Value;
        r.outcome.term = st.expr();
        r.outcome.span = st.expr()->span;
      } else {
        r.outcome.kind = OutcomeKind::StepLimit;
        r.outcome.term = st.expr();
        r.outcome.detail = "step limit of " + std::to_string(options.step_limit) + " reached";
      }
      break;
    }
    if (options.deadline && r.steps % 64 == 0 &&
        std::chrono::steady_clock::now() > *options.deadline) {
      r.outcome.kind = OutcomeKind::StepLimit;
      r.outcome.term = st.expr();
      r.outcome.deadline = true;
      r.outcome.detail = "wall-clock budget exhausted";
      break;
    }
    StepEvent ev;
    auto out = st.step(want_event ? &ev : nullptr);
    if (out) {
      r.outcome = std::move(*out);
      break;
    }
    ++r.steps;
    if (options.observer) options.observer(st, ev);
    if (options.record) r.trace.push_back(std::move(ev));
  }
  r.subst = st.subst();
  r.next_hole = st.holes().peek();
  return r;
}

}  // namespace witness
