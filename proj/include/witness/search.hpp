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

#ifndef WITNESS_SEARCH_HPP
#define WITNESS_SEARCH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "witness/eval.hpp"

namespace witness {

struct SearchParams {
  std::uint64_t num_traces = 1000;
  std::uint64_t step_limit = 3000;
  double timeout_seconds = 60.0;
  std::uint64_t seed = 0;
  /// Keep running after the first witness.
  bool exhaustive = false;
  /// Worker threads for trace runs. Results do not depend on it.
  unsigned jobs = 1;

  friend bool operator==(const SearchParams&, const SearchParams&) = default;
};

inline constexpr std::size_t kMaxSaturation = 8;

class SaturationError : public std::runtime_error {
 public:
  enum class Kind { ArityOverflow, Timeout };
  SaturationError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Saturated {
  /// The entry applied to `holes`.
  ExprPtr expr;
  std::vector<ExprPtr> holes;
  /// Hole ids below `supply.peek()` are taken.
  HoleSupply supply;
};

/// Appends fresh hole arguments while a trial run still yields a function.
/// Throws SaturationError.
Saturated saturate(const ExprPtr& e, const SearchParams& params);

struct Witness {
  /// Saturated call resolved through the final substitution.
  ExprPtr call;
  std::vector<ExprPtr> args;
  ExprPtr stuck_term;
  Span stuck_span;
  Path stuck_path;
  std::string conflict;
  std::vector<TypePtr> partial_input_types;
  /// Unresolved saturated call the trace starts from.
  ExprPtr initial;
  std::vector<StepEvent> trace;
  std::uint64_t seed = 0;
  Subst subst;
};

enum class Classification { WitnessFound, UnboundVariable, InfiniteRecursion, Safe, Timeout, Ambiguous };
const char* classification_name(Classification c);

struct SearchReport {
  Classification classification = Classification::Safe;
  /// Shortest trace first, ties by seed.
  std::vector<Witness> witnesses;
  /// Traces that finished without a type clash.
  std::uint64_t tests_passed = 0;
  /// Finished traces that hit a non-type runtime error (division by zero,
  /// no matching case).
  std::uint64_t runtime_errors = 0;
  std::uint64_t traces_run = 0;
  double elapsed_seconds = 0.0;
  /// Reason for the non-witness classes (unbound name, looping function, ...).
  std::string detail;
  Span span;
};

/// Runs up to `params.num_traces` seeded traces of the saturated entry.
/// `pre` pre-binds type holes of the saturated call in every trace.
SearchReport gen_witness(const SearchParams& params, const ExprPtr& e, const TypeSubst& pre = {});

/// `v` resolved through `s` with every remaining hole replaced by a default
/// value of its resolved type (unconstrained holes become 0).
ExprPtr concretize(const ExprPtr& v, const Subst& s);

/// Pretty form with unbound holes shown as `_`.
std::string pretty_wildcards(const ExprPtr& e);

/// The five instantiations tried for residual hole types.
std::vector<TypePtr> generality_samples();

/// `t` with every hole replaced by `by`.
TypePtr fill_holes(const TypePtr& t, const TypePtr& by);

}  // namespace witness

#endif  // WITNESS_SEARCH_HPP
