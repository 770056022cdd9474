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

#include "witness/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <thread>

namespace witness {

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::WitnessFound: return "witness-found";
    case Classification::UnboundVariable: return "unbound-variable";
    case Classification::InfiniteRecursion: return "infinite-recursion";
    case Classification::Safe: return "safe";
    case Classification::Timeout: return "timeout";
    case Classification::Ambiguous: return "ambiguous";
  }
  return "safe";
}

namespace {

using Clock = std::chrono::steady_clock;

Clock::time_point deadline_after(const Clock::time_point& start, double seconds) {
  return start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

Span hole_span(const ExprPtr& e, std::size_t index) {
  if (e->kind == ExprKind::FunRef && index < e->def->param_spans.size())
    return e->def->param_spans[index];
  return e->span;
}

}  // namespace

Saturated saturate(const ExprPtr& e, const SearchParams& params) {
  Saturated sat;
  sat.expr = e;
  sat.supply = HoleSupply(1);
  auto deadline = deadline_after(Clock::now(), params.timeout_seconds);
  for (;;) {
    RunOptions options;
    options.step_limit = params.step_limit;
    options.deadline = deadline;
    options.record = false;
    RunResult trial = run(sat.expr, options, params.seed, {}, sat.supply);
    if (trial.outcome.kind == OutcomeKind::StepLimit) {
      throw SaturationError(SaturationError::Kind::Timeout,
                            "trial evaluation of the entry did not finish");
    }
    if (trial.outcome.kind != OutcomeKind::Value || !is_function_value(trial.outcome.term)) break;
    if (sat.holes.size() == kMaxSaturation) {
      throw SaturationError(SaturationError::Kind::ArityOverflow,
                            "entry still returns a function after " +
                                std::to_string(kMaxSaturation) + " arguments");
    }
    Span span = hole_span(e, sat.holes.size());
    HoleId v = sat.supply.fresh();
    HoleId a = sat.supply.fresh();
    ExprPtr hole = mk_hole(v, t_hole(a), span);
    sat.holes.push_back(hole);
    sat.expr = mk_app(sat.expr, hole, e->span);
  }
  return sat;
}

ExprPtr concretize(const ExprPtr& v, const Subst& s) {
  std::function<ExprPtr(const TypePtr&)> fallback = [&](const TypePtr& t0) -> ExprPtr {
    TypePtr t = resolve(t0, s.types);
    switch (t->kind) {
      case TypeKind::Bool: return mk_bool(false);
      case TypeKind::Fun: return mk_lam("x", mk_var("x"));
      case TypeKind::Prod: return mk_pair(fallback(t->first), fallback(t->second));
      case TypeKind::List: return mk_list(t->first, {});
      case TypeKind::Tree: return mk_leaf(t->first);
      default: return mk_int(0);
    }
  };
  std::function<ExprPtr(const ExprPtr&)> fill = [&](const ExprPtr& e) -> ExprPtr {
    if (e->kind == ExprKind::Hole) return with_span(fallback(e->type), e->span);
    ExprPtr out = e;
    for (std::size_t i = 0; i < e->kids.size(); ++i) out = with_kid(out, i, fill(e->kids[i]));
    return out;
  };
  return fill(resolve(v, s));
}

std::string pretty_wildcards(const ExprPtr& e) {
  std::function<ExprPtr(const ExprPtr&)> blank = [&](const ExprPtr& x) -> ExprPtr {
    if (x->kind == ExprKind::Hole) return mk_var("_", x->span);
    ExprPtr out = x;
    for (std::size_t i = 0; i < x->kids.size(); ++i) out = with_kid(out, i, blank(x->kids[i]));
    return out;
  };
  return pretty(blank(e));
}

std::vector<TypePtr> generality_samples() {
  return {t_int(), t_bool(), t_list(t_int()), t_prod(t_int(), t_bool()), t_fun()};
}

TypePtr fill_holes(const TypePtr& t, const TypePtr& by) {
  switch (t->kind) {
    case TypeKind::Hole:
    case TypeKind::Generic:
      return by;
    case TypeKind::Prod: return t_prod(fill_holes(t->first, by), fill_holes(t->second, by));
    case TypeKind::List: return t_list(fill_holes(t->first, by));
    case TypeKind::Tree: return t_tree(fill_holes(t->first, by));
    default: return t;
  }
}

namespace {

RunResult run_trace(const Saturated& sat, const SearchParams& params, const TypeSubst& pre,
                    std::uint64_t index, Clock::time_point deadline, bool record) {
  RunOptions options;
  options.step_limit = params.step_limit;
  options.deadline = deadline;
  options.record = record;
  Subst initial;
  initial.types = pre;
  return run(sat.expr, options, params.seed + index, initial, sat.supply);
}

Witness make_witness(const Saturated& sat, RunResult r, std::uint64_t seed) {
  Witness w;
  w.call = resolve(sat.expr, r.subst);
  for (const auto& h : sat.holes) {
    w.args.push_back(resolve(h, r.subst));
    w.partial_input_types.push_back(resolve(h->type, r.subst.types));
  }
  w.stuck_term = r.outcome.term;
  w.stuck_span = r.outcome.span;
  w.stuck_path = r.outcome.path;
  w.conflict = r.outcome.detail;
  w.initial = sat.expr;
  w.trace = std::move(r.trace);
  w.seed = seed;
  w.subst = std::move(r.subst);
  return w;
}

}  // namespace

SearchReport gen_witness(const SearchParams& params, const ExprPtr& e, const TypeSubst& pre) {
  const auto start = Clock::now();
  const auto deadline = deadline_after(start, params.timeout_seconds);
  SearchReport report;
  auto finish = [&]() {
    report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
  };

  Saturated sat;
  try {
    sat = saturate(e, params);
  } catch (const SaturationError& err) {
    report.classification = err.kind() == SaturationError::Kind::Timeout ? Classification::Timeout
                                                                         : Classification::Ambiguous;
    report.detail = err.what();
    report.span = e->span;
    return finish();
  }

  bool ambiguous = false;
  bool timed_out = false;
  const unsigned jobs = std::max(1u, params.jobs);
  const std::uint64_t batch = jobs == 1 ? 1 : static_cast<std::uint64_t>(jobs) * 4;
  std::vector<RunResult> results;
  bool stop = false;

  for (std::uint64_t base = 0; base < params.num_traces && !stop; base += batch) {
    std::uint64_t count = std::min(batch, params.num_traces - base);
    results.assign(count, RunResult{});
    if (jobs == 1) {
      results[0] = run_trace(sat, params, pre, base, deadline, false);
    } else {
      std::vector<std::thread> workers;
      for (unsigned j = 0; j < jobs; ++j) {
        workers.emplace_back([&, j]() {
          for (std::uint64_t i = j; i < count; i += jobs)
            results[i] = run_trace(sat, params, pre, base + i, deadline, false);
        });
      }
      for (auto& w : workers) w.join();
    }
    // Merge in seed order so the report does not depend on scheduling.
    for (std::uint64_t i = 0; i < count && !stop; ++i) {
      const Outcome& o = results[i].outcome;
      const std::uint64_t index = base + i;
      ++report.traces_run;
      switch (o.kind) {
        case OutcomeKind::UnboundVariable:
        case OutcomeKind::InfiniteRecursion:
          report.classification = o.kind == OutcomeKind::UnboundVariable
                                      ? Classification::UnboundVariable
                                      : Classification::InfiniteRecursion;
          report.detail = o.detail;
          report.span = o.span;
          report.witnesses.clear();
          return finish();
        case OutcomeKind::Stuck:
          if (o.is_witness()) {
            RunResult full = run_trace(sat, params, pre, index, deadline, true);
            report.witnesses.push_back(make_witness(sat, std::move(full), params.seed + index));
            if (!params.exhaustive) stop = true;
          } else {
            ++report.tests_passed;
            ++report.runtime_errors;
          }
          break;
        case OutcomeKind::Ambiguous:
          ambiguous = true;
          if (report.detail.empty()) {
            report.detail = o.detail;
            report.span = o.span;
          }
          break;
        case OutcomeKind::StepLimit:
          timed_out = true;
          if (o.deadline) stop = true;
          break;
        case OutcomeKind::Value:
          ++report.tests_passed;
          break;
      }
    }
  }

  if (!report.witnesses.empty()) {
    std::stable_sort(report.witnesses.begin(), report.witnesses.end(),
                     [](const Witness& a, const Witness& b) {
                       if (a.trace.size() != b.trace.size()) return a.trace.size() < b.trace.size();
                       return a.seed < b.seed;
                     });
    report.classification = Classification::WitnessFound;
    report.detail.clear();
    report.span = report.witnesses.front().stuck_span;
  } else if (ambiguous) {
    report.classification = Classification::Ambiguous;
  } else if (timed_out) {
    report.classification = Classification::Timeout;
    report.detail = "traces exceeded the step limit or the time budget";
  } else {
    report.classification = Classification::Safe;
  }
  return finish();
}

}  // namespace witness
