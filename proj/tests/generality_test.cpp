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

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <random>

#include "generality.hpp"
#include "generators.hpp"
#include "test_programs.hpp"

namespace witness::testing {
namespace {

void expect_general(const GeneralityCheck& c) {
  EXPECT_TRUE(c.ok()) << c.name << ": " << (c.failures.empty() ? "" : c.failures.front());
}

TEST(Generality, Corpus) {
  std::vector<std::string> names = list_programs("corpus");
  ASSERT_GE(names.size(), 30u);
  std::size_t instantiations = 0;
  for (const auto& n : names) {
    SourceFile src(n + ".ml", read_test_file("corpus/" + n + ".ml"));
    GeneralityCheck c = check_generality(n, src, SearchParams{});
    expect_general(c);
    instantiations += c.instantiations;
    if (std::getenv("WITNESS_VERBOSE"))
      std::printf("%-14s witnesses %zu replayed %zu instantiations %zu/%zu\n", n.c_str(), c.witnesses,
                  c.replayed_stuck, c.instantiations_found, c.instantiations);
  }
  EXPECT_GT(instantiations, 0u);
}

TEST(Generality, Showcase) {
  for (const char* n : {"fac", "fac_sub", "sqsum", "sumlist", "append", "wwhile", "palindrome"})
    expect_general(check_generality(n, program_source(n), {}));
}

TEST(Generality, ExhaustiveWitnessesAllReplay) {
  SearchParams p;
  p.exhaustive = true;
  p.num_traces = 200;
  for (const char* n : {"sqsum", "sumlist", "append", "fac"}) {
    GeneralityCheck c = check_generality(n, program_source(n), p);
    EXPECT_GT(c.witnesses, 1u) << n;
    expect_general(c);
  }
}

TEST(Generality, GeneratedFunctions) {
  std::mt19937_64 rng(2026);
  GenOptions o;
  o.max_depth = 4;
  o.wrong_type_percent = 10;
  SearchParams p;
  p.num_traces = 200;
  std::size_t found = 0;
  for (int i = 0; i < 300 && found < 40; ++i) {
    std::string text = gen_function(rng, o);
    SourceFile src("gen.ml", text);
    ExprPtr e = link_entry(parse_program(src), "");
    if (gen_witness(p, e).classification != Classification::WitnessFound) continue;
    ++found;
    GeneralityCheck c = check_generality("generated " + std::to_string(i), src, p);
    EXPECT_TRUE(c.ok()) << text << "\n" << (c.failures.empty() ? "" : c.failures.front());
  }
  EXPECT_GE(found, 30u);
}

}  // namespace
}  // namespace witness::testing
