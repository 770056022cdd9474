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

#ifndef WITNESS_SYNTAX_HPP
#define WITNESS_SYNTAX_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace witness {

/// Half-open byte range into the program text. Line/column are derived on
/// demand from a SourceFile.
struct Span {
  static constexpr std::uint32_t kNone = 0xffffffffu;
  std::uint32_t begin = kNone;
  std::uint32_t end = kNone;

  bool valid() const { return begin != kNone; }
  bool contains(const Span& other) const {
    return valid() && other.valid() && begin <= other.begin && other.end <= end;
  }
  friend auto operator<=>(const Span&, const Span&) = default;
};

Span merge(const Span& a, const Span& b);

/// Identifier of a value hole or a type hole. Both kinds are drawn from one
/// run-scoped counter, so an id is never reused within a run.
struct HoleId {
  std::uint32_t value = 0;
  friend auto operator<=>(const HoleId&, const HoleId&) = default;
};

class HoleSupply {
 public:
  explicit HoleSupply(std::uint32_t next = 1) : next_(next) {}
  HoleId fresh() { return HoleId{next_++}; }
  std::uint32_t peek() const { return next_; }

 private:
  std::uint32_t next_;
};

// ---------------------------------------------------------------------------
// Types

enum class TypeKind { Int, Bool, Fun, Prod, Tree, List, Hole, Generic };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

/// Dynamic types. `Fun` is opaque: functions may be applied, nothing more is
/// known about them. `Generic` only appears as the unannotated label of a
/// source-level `[]`/`Leaf`; it is replaced by a fresh hole whenever the code
/// containing it is instantiated.
struct Type {
  TypeKind kind = TypeKind::Int;
  HoleId hole{};
  TypePtr first;
  TypePtr second;
};

TypePtr t_int();
TypePtr t_bool();
TypePtr t_fun();
TypePtr t_generic();
TypePtr t_prod(TypePtr a, TypePtr b);
TypePtr t_list(TypePtr elem);
TypePtr t_tree(TypePtr elem);
TypePtr t_hole(HoleId id);

bool type_equal(const TypePtr& a, const TypePtr& b);
bool is_concrete(const TypePtr& t);
bool occurs(HoleId id, const TypePtr& t);
void collect_holes(const TypePtr& t, std::set<HoleId>& out);
std::string type_to_string(const TypePtr& t);

// ---------------------------------------------------------------------------
// Expressions

enum class PrimOp {
  Add, Sub, Mul, Div, Mod,
  Lt, Le, Gt, Ge, Eq, Ne,
  And, Or,
  Append, Cons,
};

const char* prim_symbol(PrimOp op);
bool is_arith(PrimOp op);
bool is_comparison(PrimOp op);

enum class ExprKind {
  Var, Int, Bool, Lam, App, Prim, If, Pair,
  List,      // list value: label + items (items are values)
  Leaf,      // tree leaf value
  NodeValue, // tree node value: kids = {value, left, right}
  NodeCtor,  // `Node (v, l, r)` construction, not yet checked
  Match, Let, LetRec, FunRef, Hole,
};

enum class PatKind { Wild, Var, Int, Bool, Pair, Nil, Cons, Leaf, Node };

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
  PatKind kind = PatKind::Wild;
  std::string name;
  std::int64_t num = 0;
  std::vector<PatternPtr> kids;
  Span span;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// A named function: a top-level binding with parameters, or a local
/// `let rec`. Self references inside `body` stay as `Var(name)` and are
/// replaced by a FunRef to this definition at each call.
struct FunDef {
  std::string name;
  bool recursive = false;
  std::vector<std::string> params;
  std::vector<Span> param_spans;
  ExprPtr body;
  Span span;
};
using FunDefPtr = std::shared_ptr<const FunDef>;

/// Immutable expression node. Children live in `kids`; the child index is the
/// path component used by evaluation contexts and the reduction graph:
///   Lam {body}          App {fn, arg}        Prim {lhs, rhs}
///   If {cond, then, else}                    Pair {first, second}
///   List {items...}     NodeValue/NodeCtor {value, left, right}
///   Match {scrutinee, case bodies...}        Let {bound, body}
///   LetRec {function body, in}
/// Value nodes carry provenance in `span`: the literal or the redex that
/// produced them.
struct Expr {
  ExprKind kind = ExprKind::Int;
  Span span;
  std::string name;          // Var, Lam/Let param, LetRec/FunRef name
  std::int64_t num = 0;      // Int literal, Bool literal (0/1), LetRec recursive flag
  PrimOp op = PrimOp::Add;
  HoleId hole{};             // Hole
  TypePtr type;              // Hole type, List/Leaf/Node label
  std::vector<ExprPtr> kids;
  std::vector<PatternPtr> patterns;  // Match cases (parallel to kids[1..])
  std::vector<std::string> params;   // LetRec parameters
  std::vector<Span> param_spans;     // LetRec parameter spans
  FunDefPtr def;             // FunRef
};

ExprPtr mk_var(std::string name, Span s = {});
ExprPtr mk_int(std::int64_t n, Span s = {});
ExprPtr mk_bool(bool b, Span s = {});
ExprPtr mk_lam(std::string param, ExprPtr body, Span s = {});
ExprPtr mk_app(ExprPtr fn, ExprPtr arg, Span s = {});
ExprPtr mk_prim(PrimOp op, ExprPtr lhs, ExprPtr rhs, Span s = {});
ExprPtr mk_if(ExprPtr c, ExprPtr t, ExprPtr e, Span s = {});
ExprPtr mk_pair(ExprPtr a, ExprPtr b, Span s = {});
ExprPtr mk_list(TypePtr label, std::vector<ExprPtr> items, Span s = {});
ExprPtr mk_leaf(TypePtr label, Span s = {});
ExprPtr mk_node_value(TypePtr label, ExprPtr v, ExprPtr l, ExprPtr r, Span s = {});
ExprPtr mk_node_ctor(ExprPtr v, ExprPtr l, ExprPtr r, Span s = {});
ExprPtr mk_match(ExprPtr scrutinee, std::vector<PatternPtr> pats,
                 std::vector<ExprPtr> bodies, Span s = {});
ExprPtr mk_let(std::string name, ExprPtr bound, ExprPtr body, Span s = {});
/// Local named function. With `recursive` false the body does not see `name`.
ExprPtr mk_letrec(std::string name, std::vector<std::string> params,
                  std::vector<Span> param_spans, ExprPtr fn_body, ExprPtr in,
                  Span s = {}, bool recursive = true);
ExprPtr mk_funref(FunDefPtr def, Span s = {});
ExprPtr mk_hole(HoleId id, TypePtr type, Span s = {});

/// Copy of `e` with a different span (provenance).
ExprPtr with_span(const ExprPtr& e, Span s);
/// Copy of `e` with `kids[index]` replaced.
ExprPtr with_kid(const ExprPtr& e, std::size_t index, ExprPtr kid);

PatternPtr mk_pat(PatKind kind, std::vector<PatternPtr> kids = {},
                  std::string name = {}, std::int64_t num = 0, Span s = {});

/// Number of leading arguments a FunRef needs before its body runs.
std::size_t arity(const FunDef& def);

/// Values: literals, lambdas, named functions (possibly partially applied),
/// pairs of values, list/tree values and holes.
bool is_value(const ExprPtr& e);
bool is_function_value(const ExprPtr& e);
bool is_normalized(const ExprPtr& v);

/// Structural equality ignoring spans.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool pattern_equal(const PatternPtr& a, const PatternPtr& b);
/// Equality up to consistent renaming of bound variables.
bool alpha_equal(const ExprPtr& a, const ExprPtr& b);

void pattern_vars(const PatternPtr& p, std::vector<std::string>& out);

/// Capture-naive substitution of closed values for free variables. With
/// `occurrence_spans`, a substituted named function takes the span of the
/// variable it replaces.
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& env,
                   bool occurrence_spans = false);

/// Replaces every Generic label in `e` by a fresh type hole. Lambda bodies and
/// local function bodies are skipped: they are instantiated when called, so
/// each call gets its own labels.
ExprPtr instantiate_labels(const ExprPtr& e, HoleSupply& holes);

void collect_value_holes(const ExprPtr& e, std::set<HoleId>& out);

std::vector<ExprPtr> spine_args(const ExprPtr& app, ExprPtr* head);

// ---------------------------------------------------------------------------
// Substitutions

/// Value substitution. Kept idempotent: the co-domain never mentions a hole in
/// the domain, and every bound value is normalized.
using ValueSubst = std::map<HoleId, ExprPtr>;

/// Type substitution. Kept triangular so that extension never rewrites an
/// existing binding; `resolve` chases bindings to a fixpoint.
using TypeSubst = std::map<HoleId, TypePtr>;

struct Subst {
  ValueSubst values;
  TypeSubst types;
  friend bool operator==(const Subst& a, const Subst& b);
};

/// Extends `sigma` with `hole -> v` and rewrites the existing co-domain so the
/// map stays idempotent. `v` is resolved through `sigma` first.
void bind_value(ValueSubst& sigma, HoleId hole, ExprPtr v);

TypePtr resolve(const TypePtr& t, const TypeSubst& theta);
ExprPtr resolve(const ExprPtr& e, const Subst& s);
/// Follows value-hole bindings at the root only.
ExprPtr lookup_root(const ExprPtr& v, const ValueSubst& sigma);

/// Dynamic type of a value.
TypePtr type_of(const ExprPtr& v);

/// First-order unification of all `constraints` with occurs check. Returns the
/// extended substitution, or nullopt when the types are incompatible.
std::optional<TypeSubst> unify(const std::vector<TypePtr>& constraints, const TypeSubst& theta);

/// Some substitution maps both types to one type (after renaming them apart).
bool compat(const TypePtr& s, const TypePtr& t);

/// There is a substitution mapping `t` directly to `s`.
bool is_refinement(const TypePtr& s, const TypePtr& t);

}  // namespace witness

#endif  // WITNESS_SYNTAX_HPP
