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

#ifndef WITNESS_BLAME_HPP
#define WITNESS_BLAME_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "witness/search.hpp"

namespace witness {

struct BlameReport {
  /// The stuck redex.
  Span sink;
  /// Producers of the operand values of the stuck redex, earliest first.
  std::vector<Span> sources;
  /// Sink followed by the sources, without duplicates.
  std::vector<Span> all;
  friend bool operator==(const BlameReport&, const BlameReport&) = default;
};

class MissingProvenance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand values of a stuck redex: the scrutinee of a match or the
/// condition of an `if`, every value operand otherwise.
std::vector<ExprPtr> stuck_operands(const ExprPtr& stuck_term);

BlameReport blame(const ExprPtr& initial, const std::vector<StepEvent>& trace,
                  const ExprPtr& stuck_term, Span sink);
BlameReport blame(const Witness& w);

/// One line per location: `sink` or `source`, the line:col range and the
/// source text with whitespace runs collapsed.
std::string render_blame(const BlameReport& r, const SourceFile& src);

}  // namespace witness

#endif  // WITNESS_BLAME_HPP
