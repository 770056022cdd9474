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

#ifndef WITNESS_TESTS_GENERATORS_HPP
#define WITNESS_TESTS_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>

namespace witness::testing {

struct GenOptions {
  int max_depth = 5;
  /// Chance per node of producing a term of the wrong type, in percent.
  int wrong_type_percent = 0;
  /// Chance per leaf of a free variable, in percent.
  int unbound_percent = 0;
};

/// Source text of a closed expression.
std::string gen_expression(std::mt19937_64& rng, const GenOptions& o);

/// Source text of a program `let f p1 ... pn = body` with 1 to 3 parameters.
std::string gen_function(std::mt19937_64& rng, const GenOptions& o);

}  // namespace witness::testing

#endif  // WITNESS_TESTS_GENERATORS_HPP
