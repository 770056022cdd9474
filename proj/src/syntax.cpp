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

#include "witness/syntax.hpp"

#include <algorithm>
#include <utility>

namespace witness {

Span merge(const Span& a, const Span& b) {
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  return Span{std::min(a.begin, b.begin), std::max(a.end, b.end)};
}

// ---------------------------------------------------------------------------
// Types

namespace {

TypePtr make_type(TypeKind kind, TypePtr a = nullptr, TypePtr b = nullptr) {
  auto t = std::make_shared<Type>();
  t->kind = kind;
  t->first = std::move(a);
  t->second = std::move(b);
  return t;
}

}  // namespace

TypePtr t_int() {
  static const TypePtr t = make_type(TypeKind::Int);
  return t;
}
TypePtr t_bool() {
  static const TypePtr t = make_type(TypeKind::Bool);
  return t;
}
TypePtr t_fun() {
  static const TypePtr t = make_type(TypeKind::Fun);
  return t;
}
TypePtr t_generic() {
  static const TypePtr t = make_type(TypeKind::Generic);
  return t;
}
TypePtr t_prod(TypePtr a, TypePtr b) { return make_type(TypeKind::Prod, std::move(a), std::move(b)); }
TypePtr t_list(TypePtr elem) { return make_type(TypeKind::List, std::move(elem)); }
TypePtr t_tree(TypePtr elem) { return make_type(TypeKind::Tree, std::move(elem)); }
TypePtr t_hole(HoleId id) {
  auto t = std::make_shared<Type>();
  t->kind = TypeKind::Hole;
  t->hole = id;
  return t;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Hole:
      return a->hole == b->hole;
    case TypeKind::Prod:
      return type_equal(a->first, b->first) && type_equal(a->second, b->second);
    case TypeKind::List:
    case TypeKind::Tree:
      return type_equal(a->first, b->first);
    default:
      return true;
  }
}

bool is_concrete(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Hole:
    case TypeKind::Generic:
      return false;
    case TypeKind::Prod:
      return is_concrete(t->first) && is_concrete(t->second);
    case TypeKind::List:
    case TypeKind::Tree:
      return is_concrete(t->first);
    default:
      return true;
  }
}

bool occurs(HoleId id, const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Hole:
      return t->hole == id;
    case TypeKind::Prod:
      return occurs(id, t->first) || occurs(id, t->second);
    case TypeKind::List:
    case TypeKind::Tree:
      return occurs(id, t->first);
    default:
      return false;
  }
}

void collect_holes(const TypePtr& t, std::set<HoleId>& out) {
  switch (t->kind) {
    case TypeKind::Hole:
      out.insert(t->hole);
      break;
    case TypeKind::Prod:
      collect_holes(t->first, out);
      collect_holes(t->second, out);
      break;
    case TypeKind::List:
    case TypeKind::Tree:
      collect_holes(t->first, out);
      break;
    default:
      break;
  }
}

std::string type_to_string(const TypePtr& t) {
  auto atom = [](const TypePtr& x) {
    std::string s = type_to_string(x);
    return x->kind == TypeKind::Prod ? "(" + s + ")" : s;
  };
  switch (t->kind) {
    case TypeKind::Int: return "int";
    case TypeKind::Bool: return "bool";
    case TypeKind::Fun: return "fun";
    case TypeKind::Generic: return "'_";
    case TypeKind::Hole: return "'a" + std::to_string(t->hole.value);
    case TypeKind::Prod: return atom(t->first) + " * " + atom(t->second);
    case TypeKind::List: return atom(t->first) + " list";
    case TypeKind::Tree: return atom(t->first) + " tree";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expressions

const char* prim_symbol(PrimOp op) {
  switch (op) {
    case PrimOp::Add: return "+";
    case PrimOp::Sub: return "-";
    case PrimOp::Mul: return "*";
    case PrimOp::Div: return "/";
    case PrimOp::Mod: return "mod";
    case PrimOp::Lt: return "<";
    case PrimOp::Le: return "<=";
    case PrimOp::Gt: return ">";
    case PrimOp::Ge: return ">=";
    case PrimOp::Eq: return "=";
    case PrimOp::Ne: return "<>";
    case PrimOp::And: return "&&";
    case PrimOp::Or: return "||";
    case PrimOp::Append: return "@";
    case PrimOp::Cons: return "::";
  }
  return "?";
}

bool is_arith(PrimOp op) {
  return op == PrimOp::Add || op == PrimOp::Sub || op == PrimOp::Mul ||
         op == PrimOp::Div || op == PrimOp::Mod;
}

bool is_comparison(PrimOp op) {
  return op == PrimOp::Lt || op == PrimOp::Le || op == PrimOp::Gt || op == PrimOp::Ge ||
         op == PrimOp::Eq || op == PrimOp::Ne;
}

namespace {

std::shared_ptr<Expr> node(ExprKind kind, Span s) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->span = s;
  return e;
}

}  // namespace

ExprPtr mk_var(std::string name, Span s) {
  auto e = node(ExprKind::Var, s);
  e->name = std::move(name);
  return e;
}
ExprPtr mk_int(std::int64_t n, Span s) {
  auto e = node(ExprKind::Int, s);
  e->num = n;
  return e;
}
ExprPtr mk_bool(bool b, Span s) {
  auto e = node(ExprKind::Bool, s);
  e->num = b ? 1 : 0;
  return e;
}
ExprPtr mk_lam(std::string param, ExprPtr body, Span s) {
  auto e = node(ExprKind::Lam, s);
  e->name = std::move(param);
  e->kids = {std::move(body)};
  return e;
}
ExprPtr mk_app(ExprPtr fn, ExprPtr arg, Span s) {
  auto e = node(ExprKind::App, s);
  e->kids = {std::move(fn), std::move(arg)};
  return e;
}
ExprPtr mk_prim(PrimOp op, ExprPtr lhs, ExprPtr rhs, Span s) {
  auto e = node(ExprKind::Prim, s);
  e->op = op;
  e->kids = {std::move(lhs), std::move(rhs)};
  return e;
}
ExprPtr mk_if(ExprPtr c, ExprPtr t, ExprPtr f, Span s) {
  auto e = node(ExprKind::If, s);
  e->kids = {std::move(c), std::move(t), std::move(f)};
  return e;
}
ExprPtr mk_pair(ExprPtr a, ExprPtr b, Span s) {
  auto e = node(ExprKind::Pair, s);
  e->kids = {std::move(a), std::move(b)};
  return e;
}
ExprPtr mk_list(TypePtr label, std::vector<ExprPtr> items, Span s) {
  auto e = node(ExprKind::List, s);
  e->type = std::move(label);
  e->kids = std::move(items);
  return e;
}
ExprPtr mk_leaf(TypePtr label, Span s) {
  auto e = node(ExprKind::Leaf, s);
  e->type = std::move(label);
  return e;
}
ExprPtr mk_node_value(TypePtr label, ExprPtr v, ExprPtr l, ExprPtr r, Span s) {
  auto e = node(ExprKind::NodeValue, s);
  e->type = std::move(label);
  e->kids = {std::move(v), std::move(l), std::move(r)};
  return e;
}
ExprPtr mk_node_ctor(ExprPtr v, ExprPtr l, ExprPtr r, Span s) {
  auto e = node(ExprKind::NodeCtor, s);
  e->kids = {std::move(v), std::move(l), std::move(r)};
  return e;
}
ExprPtr mk_match(ExprPtr scrutinee, std::vector<PatternPtr> pats, std::vector<ExprPtr> bodies,
                 Span s) {
  auto e = node(ExprKind::Match, s);
  e->kids.reserve(bodies.size() + 1);
  e->kids.push_back(std::move(scrutinee));
  for (auto& b : bodies) e->kids.push_back(std::move(b));
  e->patterns = std::move(pats);
  return e;
}
ExprPtr mk_let(std::string name, ExprPtr bound, ExprPtr body, Span s) {
  auto e = node(ExprKind::Let, s);
  e->name = std::move(name);
  e->kids = {std::move(bound), std::move(body)};
  return e;
}
ExprPtr mk_letrec(std::string name, std::vector<std::string> params,
                  std::vector<Span> param_spans, ExprPtr fn_body, ExprPtr in, Span s,
                  bool recursive) {
  auto e = node(ExprKind::LetRec, s);
  e->num = recursive ? 1 : 0;
  e->name = std::move(name);
  e->params = std::move(params);
  e->param_spans = std::move(param_spans);
  e->kids = {std::move(fn_body), std::move(in)};
  return e;
}
ExprPtr mk_funref(FunDefPtr def, Span s) {
  auto e = node(ExprKind::FunRef, s);
  e->name = def->name;
  e->def = std::move(def);
  return e;
}
ExprPtr mk_hole(HoleId id, TypePtr type, Span s) {
  auto e = node(ExprKind::Hole, s);
  e->hole = id;
  e->type = std::move(type);
  return e;
}

ExprPtr with_span(const ExprPtr& e, Span s) {
  if (e->span == s) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->span = s;
  return copy;
}

ExprPtr with_kid(const ExprPtr& e, std::size_t index, ExprPtr kid) {
  if (e->kids[index] == kid) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->kids[index] = std::move(kid);
  return copy;
}

PatternPtr mk_pat(PatKind kind, std::vector<PatternPtr> kids, std::string name, std::int64_t num,
                  Span s) {
  auto p = std::make_shared<Pattern>();
  p->kind = kind;
  p->kids = std::move(kids);
  p->name = std::move(name);
  p->num = num;
  p->span = s;
  return p;
}

std::size_t arity(const FunDef& def) { return def.params.size(); }

std::vector<ExprPtr> spine_args(const ExprPtr& app, ExprPtr* head) {
  std::vector<ExprPtr> args;
  ExprPtr cur = app;
  while (cur->kind == ExprKind::App) {
    args.push_back(cur->kids[1]);
    cur = cur->kids[0];
  }
  std::reverse(args.begin(), args.end());
  if (head) *head = cur;
  return args;
}

namespace {

bool is_partial_application(const ExprPtr& e) {
  ExprPtr head;
  std::size_t count = 0;
  ExprPtr cur = e;
  while (cur->kind == ExprKind::App) {
    if (!is_value(cur->kids[1])) return false;
    ++count;
    cur = cur->kids[0];
  }
  head = cur;
  return head->kind == ExprKind::FunRef && count < arity(*head->def);
}

}  // namespace

bool is_value(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Int:
    case ExprKind::Bool:
    case ExprKind::Lam:
    case ExprKind::FunRef:
    case ExprKind::Hole:
    case ExprKind::List:
    case ExprKind::Leaf:
    case ExprKind::NodeValue:
      return true;
    case ExprKind::Pair:
      return is_value(e->kids[0]) && is_value(e->kids[1]);
    case ExprKind::App:
      return is_partial_application(e);
    default:
      return false;
  }
}

bool is_function_value(const ExprPtr& e) {
  return e->kind == ExprKind::Lam || e->kind == ExprKind::FunRef ||
         (e->kind == ExprKind::App && is_partial_application(e));
}

bool is_normalized(const ExprPtr& v) { return is_value(v) && v->kind != ExprKind::Hole; }

bool pattern_equal(const PatternPtr& a, const PatternPtr& b) {
  if (a->kind != b->kind || a->name != b->name || a->num != b->num) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!pattern_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->num != b->num || a->op != b->op ||
      a->hole != b->hole)
    return false;
  if ((a->type == nullptr) != (b->type == nullptr)) return false;
  if (a->type && !type_equal(a->type, b->type)) return false;
  if (a->def != b->def || a->params != b->params) return false;
  if (a->kids.size() != b->kids.size() || a->patterns.size() != b->patterns.size()) return false;
  for (std::size_t i = 0; i < a->patterns.size(); ++i)
    if (!pattern_equal(a->patterns[i], b->patterns[i])) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!expr_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

void pattern_vars(const PatternPtr& p, std::vector<std::string>& out) {
  if (p->kind == PatKind::Var) out.push_back(p->name);
  for (const auto& k : p->kids) pattern_vars(k, out);
}

namespace {

using Scope = std::vector<std::pair<std::string, std::string>>;

// Binding positions are compared through a shared scope stack: a variable in
// `a` and one in `b` are equal iff they are bound at the same depth, or both
// free with the same name.
bool alpha_rec(const ExprPtr& a, const ExprPtr& b, Scope& scope);

bool alpha_pattern(const PatternPtr& a, const PatternPtr& b) {
  if (a->kind != b->kind || a->num != b->num || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!alpha_pattern(a->kids[i], b->kids[i])) return false;
  return true;
}

bool alpha_bound(const ExprPtr& a, const ExprPtr& b, Scope& scope,
                 const std::vector<std::string>& na, const std::vector<std::string>& nb) {
  if (na.size() != nb.size()) return false;
  for (std::size_t i = 0; i < na.size(); ++i) scope.emplace_back(na[i], nb[i]);
  bool ok = alpha_rec(a, b, scope);
  scope.resize(scope.size() - na.size());
  return ok;
}

bool alpha_rec(const ExprPtr& a, const ExprPtr& b, Scope& scope) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        bool ma = it->first == a->name, mb = it->second == b->name;
        if (ma || mb) return ma && mb;
      }
      return a->name == b->name;
    }
    case ExprKind::Lam:
      return alpha_bound(a->kids[0], b->kids[0], scope, {a->name}, {b->name});
    case ExprKind::Let:
      return alpha_rec(a->kids[0], b->kids[0], scope) &&
             alpha_bound(a->kids[1], b->kids[1], scope, {a->name}, {b->name});
    case ExprKind::LetRec: {
      if (a->num != b->num) return false;
      std::vector<std::string> pa, pb;
      if (a->num) {
        pa.push_back(a->name);
        pb.push_back(b->name);
      }
      pa.insert(pa.end(), a->params.begin(), a->params.end());
      pb.insert(pb.end(), b->params.begin(), b->params.end());
      return alpha_bound(a->kids[0], b->kids[0], scope, pa, pb) &&
             alpha_bound(a->kids[1], b->kids[1], scope, {a->name}, {b->name});
    }
    case ExprKind::Match: {
      if (a->patterns.size() != b->patterns.size()) return false;
      if (!alpha_rec(a->kids[0], b->kids[0], scope)) return false;
      for (std::size_t i = 0; i < a->patterns.size(); ++i) {
        if (!alpha_pattern(a->patterns[i], b->patterns[i])) return false;
        std::vector<std::string> va, vb;
        pattern_vars(a->patterns[i], va);
        pattern_vars(b->patterns[i], vb);
        if (!alpha_bound(a->kids[i + 1], b->kids[i + 1], scope, va, vb)) return false;
      }
      return true;
    }
    default:
      break;
  }
  if (a->num != b->num || a->op != b->op || a->hole != b->hole || a->def != b->def) return false;
  if (a->kind == ExprKind::FunRef && a->name != b->name) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!alpha_rec(a->kids[i], b->kids[i], scope)) return false;
  return true;
}

}  // namespace

bool alpha_equal(const ExprPtr& a, const ExprPtr& b) {
  Scope scope;
  return alpha_rec(a, b, scope);
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& env,
                   bool occurrence_spans) {
  if (env.empty()) return e;
  switch (e->kind) {
    case ExprKind::Var: {
      auto it = env.find(e->name);
      if (it == env.end()) return e;
      const ExprPtr& v = it->second;
      if (occurrence_spans && v->kind == ExprKind::FunRef) return with_span(v, e->span);
      return v;
    }
    case ExprKind::Int:
    case ExprKind::Bool:
    case ExprKind::Hole:
    case ExprKind::FunRef:
    case ExprKind::Leaf:
      return e;
    case ExprKind::Lam: {
      if (!env.count(e->name)) return with_kid(e, 0, substitute(e->kids[0], env, occurrence_spans));
      auto inner = env;
      inner.erase(e->name);
      return with_kid(e, 0, substitute(e->kids[0], inner, occurrence_spans));
    }
    case ExprKind::Let: {
      ExprPtr out = with_kid(e, 0, substitute(e->kids[0], env, occurrence_spans));
      auto inner = env;
      inner.erase(e->name);
      return with_kid(out, 1, substitute(e->kids[1], inner, occurrence_spans));
    }
    case ExprKind::LetRec: {
      auto fn_env = env;
      if (e->num) fn_env.erase(e->name);
      for (const auto& p : e->params) fn_env.erase(p);
      ExprPtr out = with_kid(e, 0, substitute(e->kids[0], fn_env, occurrence_spans));
      auto in_env = env;
      in_env.erase(e->name);
      return with_kid(out, 1, substitute(e->kids[1], in_env, occurrence_spans));
    }
    case ExprKind::Match: {
      ExprPtr out = with_kid(e, 0, substitute(e->kids[0], env, occurrence_spans));
      for (std::size_t i = 0; i < e->patterns.size(); ++i) {
        std::vector<std::string> vars;
        pattern_vars(e->patterns[i], vars);
        auto inner = env;
        for (const auto& v : vars) inner.erase(v);
        out = with_kid(out, i + 1, substitute(e->kids[i + 1], inner, occurrence_spans));
      }
      return out;
    }
    default: {
      ExprPtr out = e;
      for (std::size_t i = 0; i < e->kids.size(); ++i)
        out = with_kid(out, i, substitute(e->kids[i], env, occurrence_spans));
      return out;
    }
  }
}

ExprPtr instantiate_labels(const ExprPtr& e, HoleSupply& holes) {
  ExprPtr out = e;
  if ((e->kind == ExprKind::List || e->kind == ExprKind::Leaf || e->kind == ExprKind::NodeValue) &&
      e->type && e->type->kind == TypeKind::Generic) {
    auto copy = std::make_shared<Expr>(*e);
    copy->type = t_hole(holes.fresh());
    out = copy;
  }
  if (e->kind == ExprKind::Lam) return out;
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    if (e->kind == ExprKind::LetRec && i == 0) continue;
    out = with_kid(out, i, instantiate_labels(e->kids[i], holes));
  }
  return out;
}

void collect_value_holes(const ExprPtr& e, std::set<HoleId>& out) {
  if (e->kind == ExprKind::Hole) out.insert(e->hole);
  for (const auto& k : e->kids) collect_value_holes(k, out);
}

// ---------------------------------------------------------------------------
// Substitutions

bool operator==(const Subst& a, const Subst& b) {
  if (a.values.size() != b.values.size() || a.types.size() != b.types.size()) return false;
  for (auto ia = a.values.begin(), ib = b.values.begin(); ia != a.values.end(); ++ia, ++ib)
    if (ia->first != ib->first || !expr_equal(ia->second, ib->second)) return false;
  for (auto ia = a.types.begin(), ib = b.types.begin(); ia != a.types.end(); ++ia, ++ib)
    if (ia->first != ib->first || !type_equal(ia->second, ib->second)) return false;
  return true;
}

namespace {

ExprPtr resolve_values(const ExprPtr& e, const ValueSubst& sigma) {
  if (e->kind == ExprKind::Hole) {
    auto it = sigma.find(e->hole);
    if (it == sigma.end()) return e;
    return resolve_values(it->second, sigma);
  }
  ExprPtr out = e;
  for (std::size_t i = 0; i < e->kids.size(); ++i)
    out = with_kid(out, i, resolve_values(e->kids[i], sigma));
  return out;
}

ExprPtr replace_hole(const ExprPtr& e, HoleId hole, const ExprPtr& v) {
  if (e->kind == ExprKind::Hole) return e->hole == hole ? v : e;
  ExprPtr out = e;
  for (std::size_t i = 0; i < e->kids.size(); ++i)
    out = with_kid(out, i, replace_hole(e->kids[i], hole, v));
  return out;
}

TypePtr walk(TypePtr t, const TypeSubst& theta) {
  while (t->kind == TypeKind::Hole) {
    auto it = theta.find(t->hole);
    if (it == theta.end()) break;
    t = it->second;
  }
  return t;
}

bool unify_pair(const TypePtr& x, const TypePtr& y, TypeSubst& theta) {
  TypePtr a = walk(x, theta);
  TypePtr b = walk(y, theta);
  if (a->kind == TypeKind::Generic || b->kind == TypeKind::Generic) return true;
  if (a->kind == TypeKind::Hole && b->kind == TypeKind::Hole && a->hole == b->hole) return true;
  if (a->kind == TypeKind::Hole) {
    if (occurs(a->hole, resolve(b, theta))) return false;
    theta[a->hole] = b;
    return true;
  }
  if (b->kind == TypeKind::Hole) {
    if (occurs(b->hole, resolve(a, theta))) return false;
    theta[b->hole] = a;
    return true;
  }
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Prod:
      return unify_pair(a->first, b->first, theta) && unify_pair(a->second, b->second, theta);
    case TypeKind::List:
    case TypeKind::Tree:
      return unify_pair(a->first, b->first, theta);
    default:
      return true;
  }
}

TypePtr rename_holes(const TypePtr& t, std::uint32_t offset) {
  switch (t->kind) {
    case TypeKind::Hole:
      return t_hole(HoleId{t->hole.value + offset});
    case TypeKind::Prod:
      return t_prod(rename_holes(t->first, offset), rename_holes(t->second, offset));
    case TypeKind::List:
      return t_list(rename_holes(t->first, offset));
    case TypeKind::Tree:
      return t_tree(rename_holes(t->first, offset));
    default:
      return t;
  }
}

bool match_type(const TypePtr& pattern, const TypePtr& target, std::map<HoleId, TypePtr>& out) {
  if (pattern->kind == TypeKind::Hole) {
    auto [it, inserted] = out.emplace(pattern->hole, target);
    return inserted || type_equal(it->second, target);
  }
  if (pattern->kind != target->kind) return false;
  switch (pattern->kind) {
    case TypeKind::Prod:
      return match_type(pattern->first, target->first, out) &&
             match_type(pattern->second, target->second, out);
    case TypeKind::List:
    case TypeKind::Tree:
      return match_type(pattern->first, target->first, out);
    default:
      return true;
  }
}

}  // namespace

void bind_value(ValueSubst& sigma, HoleId hole, ExprPtr v) {
  ExprPtr resolved = resolve_values(v, sigma);
  for (auto& [id, bound] : sigma) bound = replace_hole(bound, hole, resolved);
  sigma[hole] = std::move(resolved);
}

TypePtr resolve(const TypePtr& t, const TypeSubst& theta) {
  TypePtr w = walk(t, theta);
  switch (w->kind) {
    case TypeKind::Prod: {
      TypePtr a = resolve(w->first, theta), b = resolve(w->second, theta);
      if (a == w->first && b == w->second) return w;
      return t_prod(a, b);
    }
    case TypeKind::List: {
      TypePtr a = resolve(w->first, theta);
      return a == w->first ? w : t_list(a);
    }
    case TypeKind::Tree: {
      TypePtr a = resolve(w->first, theta);
      return a == w->first ? w : t_tree(a);
    }
    default:
      return w;
  }
}

ExprPtr resolve(const ExprPtr& e, const Subst& s) {
  if (e->kind == ExprKind::Hole) {
    auto it = s.values.find(e->hole);
    if (it != s.values.end()) return resolve(it->second, s);
  }
  ExprPtr out = e;
  if (e->type) {
    TypePtr t = resolve(e->type, s.types);
    if (t != e->type) {
      auto copy = std::make_shared<Expr>(*e);
      copy->type = t;
      out = copy;
    }
  }
  for (std::size_t i = 0; i < e->kids.size(); ++i)
    out = with_kid(out, i, resolve(e->kids[i], s));
  return out;
}

ExprPtr lookup_root(const ExprPtr& v, const ValueSubst& sigma) {
  ExprPtr cur = v;
  while (cur->kind == ExprKind::Hole) {
    auto it = sigma.find(cur->hole);
    if (it == sigma.end()) break;
    cur = it->second;
  }
  return cur;
}

TypePtr type_of(const ExprPtr& v) {
  switch (v->kind) {
    case ExprKind::Int: return t_int();
    case ExprKind::Bool: return t_bool();
    case ExprKind::Lam:
    case ExprKind::FunRef:
    case ExprKind::App:
      return t_fun();
    case ExprKind::Pair: return t_prod(type_of(v->kids[0]), type_of(v->kids[1]));
    case ExprKind::List: return t_list(v->type);
    case ExprKind::Leaf:
    case ExprKind::NodeValue:
      return t_tree(v->type);
    case ExprKind::Hole: return v->type;
    default:
      return t_generic();
  }
}

std::optional<TypeSubst> unify(const std::vector<TypePtr>& constraints, const TypeSubst& theta) {
  TypeSubst out = theta;
  for (std::size_t i = 1; i < constraints.size(); ++i)
    if (!unify_pair(constraints[0], constraints[i], out)) return std::nullopt;
  return out;
}

bool compat(const TypePtr& s, const TypePtr& t) {
  std::set<HoleId> holes;
  collect_holes(s, holes);
  std::uint32_t offset = holes.empty() ? 1 : holes.rbegin()->value + 1;
  return unify({s, rename_holes(t, offset)}, {}).has_value();
}

bool is_refinement(const TypePtr& s, const TypePtr& t) {
  std::map<HoleId, TypePtr> m;
  return match_type(t, s, m);
}

}  // namespace witness
