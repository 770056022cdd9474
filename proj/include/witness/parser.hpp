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

#ifndef WITNESS_PARSER_HPP
#define WITNESS_PARSER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "witness/syntax.hpp"

namespace witness {

/// Program text plus a line index. Lines and columns are 1-based.
class SourceFile {
 public:
  SourceFile(std::string path, std::string text);

  const std::string& path() const { return path_; }
  const std::string& text() const { return text_; }
  std::pair<std::uint32_t, std::uint32_t> position(std::uint32_t offset) const;
  std::uint32_t line(std::uint32_t offset) const { return position(offset).first; }
  std::string slice(Span s) const;

 private:
  std::string path_;
  std::string text_;
  std::vector<std::uint32_t> line_starts_;
};

struct ParseError {
  Span span;
  std::string message;
  std::vector<std::string> expected;
};

class ParseFailure : public std::runtime_error {
 public:
  explicit ParseFailure(ParseError error);
  const ParseError& error() const { return error_; }

 private:
  ParseError error_;
};

/// One `let` at the top of a file. `name` is "_" for anonymous bindings and
/// for a trailing bare expression.
struct Binding {
  std::string name;
  bool recursive = false;
  std::vector<std::string> params;
  std::vector<Span> param_spans;
  ExprPtr body;
  Span span;
};

struct Program {
  std::vector<Binding> bindings;
};

/// Throws ParseFailure.
Program parse_program(const SourceFile& src);
/// Parses a single expression; throws ParseFailure.
ExprPtr parse_expr(const std::string& text);

/// The closed expression an entry name denotes: a FunRef for bindings with
/// parameters, the inlined body otherwise. Earlier bindings are linked in;
/// names that stay free surface at runtime. "_" selects the last anonymous
/// binding and an empty name the last binding. Throws std::invalid_argument
/// for an unknown entry.
ExprPtr link_entry(const Program& program, const std::string& entry);

/// Name actually selected by `entry` (resolving "_" and the empty default).
std::string entry_name(const Program& program, const std::string& entry);

// ---------------------------------------------------------------------------
// Pretty printing

using Path = std::vector<std::uint32_t>;

std::string pretty(const ExprPtr& e);
std::string pretty(const PatternPtr& p);

struct Highlighted {
  std::string text;
  std::uint32_t begin = 0;  // character range of the subterm at the path
  std::uint32_t end = 0;
};

/// Prints `e` and reports where the subterm at `path` landed.
Highlighted pretty_highlight(const ExprPtr& e, const Path& path);

}  // namespace witness

#endif  // WITNESS_PARSER_HPP
