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

#include "witness/blame.hpp"

#include <algorithm>
#include <cstdint>

namespace witness {

namespace {

bool has_value_with_span(const ExprPtr& e, const Span& span) {
  if (is_value(e) && e->span == span) return true;
  return std::any_of(e->kids.begin(), e->kids.end(),
                     [&](const ExprPtr& k) { return has_value_with_span(k, span); });
}

// -1 when the value is already in the initial term, otherwise the first step
// whose contractum contains it.
std::int64_t produced_at(const ExprPtr& initial, const std::vector<StepEvent>& trace,
                         const Span& span) {
  if (has_value_with_span(initial, span)) return -1;
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (has_value_with_span(trace[i].redex_after, span)) return static_cast<std::int64_t>(i);
  return static_cast<std::int64_t>(trace.size());
}

}  // namespace

std::vector<ExprPtr> stuck_operands(const ExprPtr& stuck_term) {
  std::vector<ExprPtr> out;
  switch (stuck_term->kind) {
    case ExprKind::Match:
    case ExprKind::If:
    case ExprKind::Let:
      if (!stuck_term->kids.empty() && is_value(stuck_term->kids[0])) out.push_back(stuck_term->kids[0]);
      break;
    default:
      for (const ExprPtr& k : stuck_term->kids)
        if (is_value(k)) out.push_back(k);
  }
  return out;
}

BlameReport blame(const ExprPtr& initial, const std::vector<StepEvent>& trace,
                  const ExprPtr& stuck_term, Span sink) {
  if (!sink.valid()) throw MissingProvenance("stuck term has no source location");
  std::vector<std::pair<std::int64_t, Span>> timed;
  for (const ExprPtr& v : stuck_operands(stuck_term)) {
    if (!v->span.valid())
      throw MissingProvenance("value " + pretty(v) + " in the stuck term has no source location");
    timed.emplace_back(produced_at(initial, trace, v->span), v->span);
  }
  std::sort(timed.begin(), timed.end());

  BlameReport r;
  r.sink = sink;
  for (const auto& [time, span] : timed)
    if (std::find(r.sources.begin(), r.sources.end(), span) == r.sources.end()) r.sources.push_back(span);
  r.all.push_back(sink);
  for (const Span& s : r.sources)
    if (s != sink) r.all.push_back(s);
  return r;
}

namespace {

std::string location_line(const char* role, const Span& span, const SourceFile& src) {
  auto [l0, c0] = src.position(span.begin);
  auto [l1, c1] = src.position(span.end);
  std::string text;
  bool space = false;
  for (char ch : src.slice(span)) {
    if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') {
      space = true;
      continue;
    }
    if (space && !text.empty()) text += ' ';
    space = false;
    text += ch;
  }
  return std::string(role) + " " + std::to_string(l0) + ":" + std::to_string(c0) + "-" +
         std::to_string(l1) + ":" + std::to_string(c1) + " " + text + "\n";
}

}  // namespace

std::string render_blame(const BlameReport& r, const SourceFile& src) {
  std::string out = location_line("sink", r.sink, src);
  for (const Span& s : r.sources) out += location_line("source", s, src);
  return out;
}

BlameReport blame(const Witness& w) { return blame(w.initial, w.trace, w.stuck_term, w.stuck_span); }

}  // namespace witness
