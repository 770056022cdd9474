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

#include "test_programs.hpp"
#include "witness/eval.hpp"
#include "witness/parser.hpp"

namespace witness {
namespace {

RunResult run_text(const std::string& text, std::uint64_t seed = 1) {
  return run(parse_expr(text), RunOptions{}, seed);
}

TEST(Narrow, UnboundHoleToInt) {
  Subst s;
  HoleSupply holes(10);
  Rng rng(3);
  ExprPtr v = mk_hole(HoleId{1}, t_hole(HoleId{2}));
  auto n = narrow(v, t_int(), s, holes, rng);
  ASSERT_TRUE(n);
  EXPECT_EQ((*n)->kind, ExprKind::Int);
  EXPECT_TRUE(expr_equal(s.values.at(HoleId{1}), *n));
  EXPECT_TRUE(type_equal(resolve(t_hole(HoleId{2}), s.types), t_int()));
}

TEST(Narrow, ConcreteIdentity) {
  Subst s;
  HoleSupply holes;
  Rng rng(3);
  auto n = narrow(mk_int(5), t_int(), s, holes, rng);
  ASSERT_TRUE(n);
  EXPECT_EQ((*n)->num, 5);
  EXPECT_TRUE(s.values.empty());
}

TEST(Narrow, ClashLeavesSubstitution) {
  Subst s;
  s.types[HoleId{4}] = t_bool();
  Subst before = s;
  HoleSupply holes;
  Rng rng(3);
  EXPECT_FALSE(narrow(mk_bool(true), t_int(), s, holes, rng));
  EXPECT_TRUE(s == before);
}

TEST(Narrow, LeafLabelUnifies) {
  Subst s;
  HoleSupply holes(10);
  Rng rng(3);
  auto n = narrow(mk_leaf(t_hole(HoleId{3})), t_tree(t_int()), s, holes, rng);
  ASSERT_TRUE(n);
  EXPECT_EQ((*n)->kind, ExprKind::Leaf);
  EXPECT_TRUE(type_equal(resolve(t_hole(HoleId{3}), s.types), t_int()));
}

TEST(Gen, ShapesFollowTypes) {
  HoleSupply holes(100);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    ExprPtr p = gen(t_prod(t_int(), t_bool()), {}, holes, rng, {});
    ASSERT_EQ(p->kind, ExprKind::Pair);
    EXPECT_EQ(p->kids[0]->kind, ExprKind::Int);
    EXPECT_GE(p->kids[0]->num, -3);
    EXPECT_LE(p->kids[0]->num, 3);
    EXPECT_EQ(p->kids[1]->kind, ExprKind::Bool);
    ExprPtr l = gen(t_list(t_int()), {}, holes, rng, {});
    EXPECT_LE(l->kids.size(), kMaxGenLength);
  }
  Rng rng(1);
  ExprPtr f = gen(t_fun(), {}, holes, rng, {});
  ASSERT_EQ(f->kind, ExprKind::Lam);
  EXPECT_EQ(f->kids[0]->kind, ExprKind::Hole);
  ExprPtr h = gen(t_hole(HoleId{9}), {}, holes, rng, {});
  ASSERT_EQ(h->kind, ExprKind::Hole);
  EXPECT_TRUE(type_equal(h->type, t_hole(HoleId{9})));
}

TEST(Gen, IntDistribution) {
  Rng rng(7);
  std::map<std::int64_t, int> counts;
  const int n = 90000;
  for (int i = 0; i < n; ++i) ++counts[rng.small_int()];
  for (std::int64_t v = -3; v <= 3; ++v) {
    double expect = (v == 0 || v == 1 ? 2.0 : 1.0) / 9.0;
    EXPECT_NEAR(counts[v] / static_cast<double>(n), expect, 0.01) << v;
  }
}

TEST(Step, ContextChainForNestedSum) {
  RunResult r = run_text("1+2+3");
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Value);
  EXPECT_EQ(r.outcome.term->num, 6);
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_EQ(pretty(r.trace[0].whole_after), "3 + 3");
  EXPECT_EQ(pretty(r.trace[0].redex_before), "1 + 2");
  EXPECT_EQ(pretty(r.trace[0].redex_after), "3");
  EXPECT_EQ(r.trace[0].redex_path, (Path{0}));
}

TEST(Step, BetaIsCall) {
  RunResult r = run_text("(fun x -> x) 5");
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].kind, StepKind::Call);
  EXPECT_TRUE(r.trace[0].returns);
  EXPECT_EQ(r.outcome.term->num, 5);
}

TEST(Step, IntTimesBoolIsStuck) {
  RunResult r = run_text("1 * true");
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Stuck);
  EXPECT_EQ(pretty(r.outcome.term), "1 * true");
  EXPECT_TRUE(r.outcome.is_witness());
}

TEST(Run, FacOneGetsStuck) {
  Program p = parse_program(testing::program_source("fac"));
  ExprPtr call = mk_app(link_entry(p, "fac"), mk_int(1));
  RunResult r = run(call, RunOptions{}, 1);
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Stuck);
  EXPECT_EQ(pretty(r.outcome.term), "1 * true");
  std::vector<std::string> whole;
  for (const auto& e : r.trace) whole.push_back(pretty(e.whole_after));
  EXPECT_EQ(whole, (std::vector<std::string>{
                       "if 1 <= 0 then true else 1 * fac (1 - 1)",
                       "if false then true else 1 * fac (1 - 1)",
                       "1 * fac (1 - 1)",
                       "1 * fac 0",
                       "1 * (if 0 <= 0 then true else 0 * fac (0 - 1))",
                       "1 * (if true then true else 0 * fac (0 - 1))",
                       "1 * true",
                   }));
}

TEST(Run, SelfLoopIsInfiniteRecursion) {
  RunResult r = run_text("let rec f x = f x in f 0");
  EXPECT_EQ(r.outcome.kind, OutcomeKind::InfiniteRecursion);
  EXPECT_EQ(r.outcome.detail, "f");
}

TEST(Run, FreeVariable) {
  RunResult r = run_text("1 + y");
  EXPECT_EQ(r.outcome.kind, OutcomeKind::UnboundVariable);
  EXPECT_EQ(r.outcome.detail, "y");
}

TEST(Run, DivisionByZeroIsNotAWitness) {
  RunResult r = run_text("4 / (1 - 1)");
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Stuck);
  EXPECT_EQ(r.outcome.conflict, Conflict::DivByZero);
  EXPECT_FALSE(r.outcome.is_witness());
}

TEST(Run, TwoHolesCompareIsAmbiguous) {
  ExprPtr e = mk_prim(PrimOp::Le, mk_hole(HoleId{1}, t_hole(HoleId{2})),
                      mk_hole(HoleId{3}, t_hole(HoleId{4})));
  RunResult r = run(e, RunOptions{}, 1, {}, HoleSupply(10));
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Ambiguous);
}

TEST(Run, AppendStuckAtConsClash) {
  Program p = parse_program(testing::program_source("append"));
  ExprPtr call = parse_expr("append [1] [2]");
  ExprPtr linked = substitute(call, {{"append", link_entry(p, "append")}});
  RunResult r = run(linked, RunOptions{}, 1);
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Stuck);
  EXPECT_EQ(pretty(r.outcome.term), "[] :: [2]");
}

TEST(Run, SumListStuck) {
  Program p = parse_program(testing::program_source("sumlist"));
  ExprPtr linked = substitute(parse_expr("sumList [1; 2]"), {{"sumList", link_entry(p, "sumList")}});
  RunResult r = run(linked, RunOptions{}, 1);
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Stuck);
  EXPECT_EQ(pretty(r.outcome.term), "2 + []");
}

TEST(Run, SqsumStuck) {
  Program p = parse_program(testing::program_source("sqsum"));
  ExprPtr linked = substitute(parse_expr("sqsum [1]"), {{"sqsum", link_entry(p, "sqsum")}});
  RunResult r = run(linked, RunOptions{}, 1);
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Stuck);
  EXPECT_EQ(pretty(r.outcome.term), "0 @ 1");
}

TEST(Run, WwhileStuckOnPairPattern) {
  Program p = parse_program(testing::program_source("wwhile"));
  RunResult r = run(link_entry(p, "_"), RunOptions{}, 1);
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Stuck);
  EXPECT_EQ(r.outcome.term->kind, ExprKind::Match);
  EXPECT_EQ(r.outcome.term->kids[0]->kind, ExprKind::FunRef);
}

TEST(Run, StepLimit) {
  RunOptions o;
  o.step_limit = 10;
  RunResult r = run(parse_expr("let rec f x = f (x + 1) in f 0"), o, 1);
  EXPECT_EQ(r.outcome.kind, OutcomeKind::StepLimit);
  EXPECT_EQ(r.steps, 10u);
}

}  // namespace
}  // namespace witness
