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

#ifndef WITNESS_EVAL_HPP
#define WITNESS_EVAL_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "witness/parser.hpp"
#include "witness/syntax.hpp"

namespace witness {

/// Seeded source of small random values. The mapping from engine output to
/// values is fixed here, so a seed means the same thing everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [-3, 3] with 0 and 1 drawn twice as often.
  std::int64_t small_int();
  bool coin();
  /// Keeps growing a structure with probability 2/3.
  bool grow();

 private:
  std::mt19937_64 engine_;
};

inline constexpr int kMaxGenDepth = 4;
inline constexpr std::size_t kMaxGenLength = 4;

/// Random value of type `t`. Unbound type holes inside `t` become fresh value
/// holes. Every generated node carries `span`.
ExprPtr gen(const TypePtr& t, const TypeSubst& theta, HoleSupply& holes, Rng& rng, Span span,
            int depth = 0);

/// Checks `v` against `t`, instantiating holes as needed. Returns the narrowed
/// value, or nullopt on a type clash; `s` is untouched in that case.
std::optional<ExprPtr> narrow(const ExprPtr& v, const TypePtr& t, Subst& s, HoleSupply& holes,
                              Rng& rng);

enum class StepKind { Prim, Call, Match, Cond };
const char* step_kind_name(StepKind k);

struct ContextEdge {
  Path path;
  ExprPtr before;
  ExprPtr after;
};

struct StepEvent {
  ExprPtr whole_before;
  ExprPtr whole_after;
  ExprPtr redex_before;
  ExprPtr redex_after;
  Path redex_path;
  /// Enclosing subterms strictly between the root and the redex.
  std::vector<ContextEdge> context_chain;
  StepKind kind = StepKind::Prim;
  /// The step finished at least one active call.
  bool returns = false;
  Span redex_span;
};

enum class OutcomeKind { Value, Stuck, UnboundVariable, InfiniteRecursion, StepLimit, Ambiguous };
const char* outcome_kind_name(OutcomeKind k);

enum class Conflict { TypeClash, DivByZero, MatchFailure };
const char* conflict_name(Conflict c);

struct Outcome {
  OutcomeKind kind = OutcomeKind::Value;
  /// Final value, or the stuck redex resolved through the final substitution.
  ExprPtr term;
  Span span;
  /// Position of the offending redex in the final term.
  Path path;
  Conflict conflict = Conflict::TypeClash;
  /// Clash description, unbound name, looping function or ambiguity reason.
  std::string detail;
  /// StepLimit was caused by the wall-clock budget rather than the count.
  bool deadline = false;

  bool is_witness() const { return kind == OutcomeKind::Stuck && conflict == Conflict::TypeClash; }
};

struct Frame {
  Path path;
  FunDefPtr def;  // null for lambdas
  std::string name;
  std::vector<ExprPtr> args;
};

/// True iff `def` is already active in `frames` with arguments structurally
/// identical, after resolution through `s`, to `args`.
bool check_infinite_recursion(const std::vector<Frame>& frames, const FunDefPtr& def,
                              const std::vector<ExprPtr>& args, const Subst& s);

/// Small-step machine over a configuration (expr, sigma, theta). Reduction is
/// leftmost-innermost and substitution based.
class Stepper {
 public:
  Stepper(ExprPtr expr, Subst subst, HoleSupply holes, std::uint64_t seed);

  /// Performs one step. Returns the outcome once the configuration is
  /// terminal; `event`, when given, receives the step that was taken.
  std::optional<Outcome> step(StepEvent* event);

  const ExprPtr& expr() const { return expr_; }
  const Subst& subst() const { return subst_; }
  HoleSupply& holes() { return holes_; }
  const std::vector<Frame>& frames() const { return frames_; }

  /// Result of contracting one redex (internal).
  struct Contracted;

 private:
  std::optional<Path> find_redex(const ExprPtr& e) const;
  bool find_into(const ExprPtr& e, Path& path) const;
  Contracted contract(const ExprPtr& redex, const Path& path);
  Contracted contract_app(const ExprPtr& redex, const Path& path, Subst& work);
  Contracted contract_prim(const ExprPtr& redex, Subst& work);
  Contracted contract_compare(const ExprPtr& redex, Subst& work);
  Contracted contract_match(const ExprPtr& redex, Subst& work);

  ExprPtr expr_;
  Subst subst_;
  HoleSupply holes_;
  Rng rng_;
  std::vector<Frame> frames_;
};

struct RunOptions {
  std::uint64_t step_limit = 3000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  bool record = true;
  /// Called after every successful step (invariant checks in tests).
  std::function<void(const Stepper&, const StepEvent&)> observer;
};

struct RunResult {
  Outcome outcome;
  std::vector<StepEvent> trace;
  Subst subst;
  std::uint64_t steps = 0;
  std::uint32_t next_hole = 0;
};

RunResult run(const ExprPtr& e, const RunOptions& options, std::uint64_t seed, Subst subst = {},
              HoleSupply holes = HoleSupply());

/// Subterm of `e` at `path`.
ExprPtr subterm(const ExprPtr& e, const Path& path);

/// Structural equality that ignores list and tree labels.
bool same_shape(const ExprPtr& a, const ExprPtr& b);

}  // namespace witness

#endif  // WITNESS_EVAL_HPP
