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

#include <map>

#include "test_programs.hpp"
#include "witness/blame.hpp"

namespace witness {
namespace {

struct Case {
  std::string program;
  std::uint64_t seed;
};

// sqsum at seed 13 yields the one-element witness `sqsum [1]`.
const Case kShowcase[] = {{"sqsum", 13}, {"sumlist", 0}, {"append", 0}, {"wwhile", 0}};

Witness first_witness(const SourceFile& src, std::uint64_t seed) {
  SearchParams p;
  p.seed = seed;
  SearchReport r = gen_witness(p, link_entry(parse_program(src), ""));
  EXPECT_EQ(r.classification, Classification::WitnessFound) << src.path();
  return r.witnesses.front();
}

int line_of(const SourceFile& src, const Span& s) { return static_cast<int>(src.position(s.begin).first); }

TEST(Blame, SqsumSinkAndSources) {
  SourceFile src = testing::program_source("sqsum");
  Witness w = first_witness(src, 13);
  EXPECT_EQ(pretty(w.call), "sqsum [1]");
  EXPECT_EQ(pretty(w.stuck_term), "0 @ 1");
  BlameReport b = blame(w);
  EXPECT_EQ(line_of(src, b.sink), 3);
  EXPECT_EQ(src.slice(b.sink), "(sqsum t) @ (h * h)");
  ASSERT_EQ(b.sources.size(), 2u);
  EXPECT_EQ(line_of(src, b.sources[0]), 2);
  EXPECT_EQ(src.slice(b.sources[0]), "0");
  EXPECT_EQ(line_of(src, b.sources[1]), 3);
  EXPECT_EQ(src.slice(b.sources[1]), "(h * h)");
  EXPECT_EQ(b.all.size(), 3u);
  EXPECT_EQ(b.all.front(), b.sink);
}

TEST(Blame, SumListPointsAtBaseCase) {
  SourceFile src = testing::program_source("sumlist");
  BlameReport b = blame(first_witness(src, 0));
  bool base_case = false;
  for (const Span& s : b.sources) base_case |= line_of(src, s) == 2 && src.slice(s) == "[]";
  EXPECT_TRUE(base_case);
}

TEST(Blame, FacLiteralClash) {
  SourceFile src = testing::program_source("fac");
  BlameReport b = blame(first_witness(src, 0));
  EXPECT_EQ(src.slice(b.sink), "n * fac (n - 1)");
  ASSERT_EQ(b.sources.size(), 2u);
  EXPECT_EQ(src.slice(b.sources[0]), "n");
  EXPECT_EQ(line_of(src, b.sources[0]), 1);
  EXPECT_EQ(src.slice(b.sources[1]), "true");
  EXPECT_EQ(line_of(src, b.sources[1]), 3);
}

TEST(Blame, ShowcaseGoldens) {
  for (const Case& c : kShowcase) {
    SourceFile src = testing::program_source(c.program);
    Witness w = first_witness(src, c.seed);
    std::string actual = "witness " + pretty_wildcards(w.call) + "\nstuck " + pretty_wildcards(w.stuck_term) +
                         "\n" + render_blame(blame(w), src);
    EXPECT_EQ(actual, testing::golden("blame_" + c.program + ".txt", actual)) << c.program;
  }
}

TEST(Blame, SpansAreParseableSubexpressions) {
  for (const char* name : {"sqsum", "sumlist", "append", "wwhile", "fac", "fac_sub", "palindrome"}) {
    SourceFile src = testing::program_source(name);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      BlameReport b = blame(first_witness(src, seed));
      for (const Span& s : b.all) {
        ASSERT_TRUE(s.valid());
        ASSERT_LE(s.end, src.text().size());
        EXPECT_NO_THROW(parse_expr(std::string(src.slice(s)))) << name << ": " << src.slice(s);
      }
    }
  }
}

// Integer literals abstracted away.
std::string shape_of(const ExprPtr& e) {
  std::string out;
  for (char c : pretty_wildcards(e)) {
    bool digit = c >= '0' && c <= '9';
    if (digit && !out.empty() && out.back() == '#') continue;
    if (c == '-' && out.empty()) continue;
    out += digit ? '#' : c;
  }
  return out;
}

TEST(Blame, StableAcrossSeedsForSameShape) {
  for (const char* name : {"sqsum", "sumlist", "append"}) {
    SourceFile src = testing::program_source(name);
    std::map<std::string, BlameReport> by_shape;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Witness w = first_witness(src, seed);
      BlameReport b = blame(w);
      auto [it, fresh] = by_shape.emplace(shape_of(w.stuck_term), b);
      if (!fresh) EXPECT_EQ(it->second, b) << name << " seed " << seed;
    }
  }
}

TEST(Blame, StableAcrossSeedsForSameWitness) {
  SourceFile src = testing::program_source("fac");
  std::map<std::string, BlameReport> by_call;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Witness w = first_witness(src, seed);
    BlameReport b = blame(w);
    auto [it, fresh] = by_call.emplace(pretty(w.call) + " | " + pretty(w.stuck_term), b);
    if (!fresh) EXPECT_EQ(it->second, b) << "seed " << seed;
  }
}

TEST(Blame, MissingProvenance) {
  Span sink{0, 5};
  ExprPtr stuck = mk_prim(PrimOp::Add, mk_int(1), mk_bool(true, Span{2, 3}));
  EXPECT_THROW(blame(mk_int(0), {}, stuck, sink), MissingProvenance);
  ExprPtr ok = mk_prim(PrimOp::Add, mk_int(1, Span{0, 1}), mk_bool(true, Span{2, 3}));
  EXPECT_THROW(blame(mk_int(0), {}, ok, Span{}), MissingProvenance);
  BlameReport b = blame(mk_int(0), {}, ok, sink);
  EXPECT_EQ(b.sources.size(), 2u);
}

TEST(Blame, OperandsOfMatchAreTheScrutinee) {
  ExprPtr m = parse_expr("match 1 with | 0 -> 2 | _ -> 3");
  std::vector<ExprPtr> ops = stuck_operands(m);
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_EQ(pretty(ops[0]), "1");
}

}  // namespace
}  // namespace witness
