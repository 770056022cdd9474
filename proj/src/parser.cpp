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

#include "witness/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace witness {

SourceFile::SourceFile(std::string path, std::string text)
    : path_(std::move(path)), text_(std::move(text)) {
  line_starts_.push_back(0);
  for (std::uint32_t i = 0; i < text_.size(); ++i)
    if (text_[i] == '\n') line_starts_.push_back(i + 1);
}

std::pair<std::uint32_t, std::uint32_t> SourceFile::position(std::uint32_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  auto line = static_cast<std::uint32_t>(it - line_starts_.begin());
  return {line, offset - line_starts_[line - 1] + 1};
}

std::string SourceFile::slice(Span s) const {
  if (!s.valid() || s.end > text_.size()) return {};
  return text_.substr(s.begin, s.end - s.begin);
}

ParseFailure::ParseFailure(ParseError error)
    : std::runtime_error(error.message), error_(std::move(error)) {}

namespace {

enum class Tok {
  Ident,   // lower-case identifier
  Ctor,    // capitalised identifier
  Int,
  Sym,     // punctuation and operators
  Keyword,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  Span span;
};

const std::set<std::string> kKeywords = {
    "let", "rec", "in", "fun", "function", "match", "with", "if",
    "then", "else", "true", "false", "mod", "and",
};

// Longest operators first.
const char* const kSymbols[] = {
    "->", "::", "<=", ">=", "<>", "&&", "||", ";;", "+", "-", "*", "/", "=",
    "<",  ">",  "@",  "(",  ")",  "[",  "]",  ",",  ";", "|", ":", "'",
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = Tok::End;
    end.span = Span{static_cast<std::uint32_t>(text_.size()), static_cast<std::uint32_t>(text_.size())};
    out.push_back(end);
    return out;
  }

 private:
  [[noreturn]] void fail(std::uint32_t at, std::string message) {
    throw ParseFailure(ParseError{Span{at, at + 1}, std::move(message), {}});
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '(' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  void skip_comment() {
    auto start = static_cast<std::uint32_t>(pos_);
    int depth = 0;
    while (pos_ + 1 < text_.size()) {
      if (text_[pos_] == '(' && text_[pos_ + 1] == '*') {
        ++depth;
        pos_ += 2;
      } else if (text_[pos_] == '*' && text_[pos_ + 1] == ')') {
        --depth;
        pos_ += 2;
        if (depth == 0) return;
      } else {
        ++pos_;
      }
    }
    fail(start, "unterminated comment");
  }

  Token next() {
    Token t;
    auto start = static_cast<std::uint32_t>(pos_);
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        if (v > (INT64_MAX - 9) / 10) fail(start, "integer literal too large");
        v = v * 10 + (text_[pos_] - '0');
        ++pos_;
      }
      t.kind = Tok::Int;
      t.value = v;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '\''))
        ++pos_;
      t.text = text_.substr(start, pos_ - start);
      if (kKeywords.count(t.text)) {
        t.kind = Tok::Keyword;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        t.kind = Tok::Ctor;
      } else if (t.text == "_") {
        t.kind = Tok::Sym;
      } else {
        t.kind = Tok::Ident;
      }
    } else {
      for (const char* sym : kSymbols) {
        std::string s(sym);
        if (text_.compare(pos_, s.size(), s) == 0) {
          t.kind = Tok::Sym;
          t.text = s;
          pos_ += s.size();
          break;
        }
      }
      if (t.kind != Tok::Sym) fail(start, std::string("unexpected character '") + c + "'");
    }
    if (t.text.empty() && t.kind != Tok::Int) t.text = text_.substr(start, pos_ - start);
    t.span = Span{start, static_cast<std::uint32_t>(pos_)};
    return t;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

struct Param {
  std::string name;
  PatternPtr pattern;  // set when the parameter is a non-variable pattern
  Span span;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(Lexer(text).run()) {}

  Program program() {
    Program prog;
    while (!at_end()) {
      if (is_sym(";;")) {
        advance();
        continue;
      }
      if (is_kw("let")) {
        Binding b = top_binding();
        prog.bindings.push_back(std::move(b));
      } else {
        ExprPtr e = expr();
        Binding b;
        b.name = "_";
        b.body = e;
        b.span = e->span;
        prog.bindings.push_back(std::move(b));
      }
    }
    return prog;
  }

  ExprPtr single_expr() {
    ExprPtr e = expr();
    if (!at_end()) fail("end of input", {"end of input"});
    return e;
  }

 private:
  // Token access ----------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_sym(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Sym && peek(ahead).text == s;
  }
  bool is_kw(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Keyword && peek(ahead).text == s;
  }
  Span last_span() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }
  Span span_from(std::uint32_t begin) const { return Span{begin, last_span().end}; }
  std::uint32_t here() const { return peek().span.begin; }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (t.kind == Tok::Int) found = "'" + std::to_string(t.value) + "'";
    Span s = t.span;
    if (s.begin == s.end && s.begin > 0) s.begin -= 1;
    throw ParseFailure(ParseError{s, "expected " + what + " but found " + found, std::move(expected)});
  }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("'") + s + "'", {s});
    advance();
  }
  void expect_kw(const char* s) {
    if (!is_kw(s)) fail(std::string("'") + s + "'", {s});
    advance();
  }
  std::string fresh_name() { return "_p" + std::to_string(++fresh_); }

  // Bindings --------------------------------------------------------------

  bool starts_param() const {
    const Token& t = peek();
    return t.kind == Tok::Ident || is_sym("_") || is_sym("(") || is_sym("[") ||
           t.kind == Tok::Ctor;
  }

  Param param() {
    Param p;
    std::uint32_t begin = here();
    if (peek().kind == Tok::Ident) {
      p.name = advance().text;
    } else {
      PatternPtr pat = atom_pattern();
      if (pat->kind == PatKind::Var) {
        p.name = pat->name;
      } else {
        p.name = fresh_name();
        if (pat->kind != PatKind::Wild) p.pattern = pat;
      }
    }
    p.span = span_from(begin);
    return p;
  }

  // Wraps `body` in matches for pattern parameters, innermost last.
  static ExprPtr bind_patterns(const std::vector<Param>& params, ExprPtr body) {
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      if (!it->pattern) continue;
      Span s = merge(it->span, body->span);
      body = mk_match(mk_var(it->name, it->span), {it->pattern}, {body}, s);
    }
    return body;
  }

  struct Head {
    std::string name;
    bool recursive = false;
    std::vector<Param> params;
    ExprPtr body;
  };

  Head let_head() {
    Head h;
    if (is_kw("rec")) {
      advance();
      h.recursive = true;
    }
    if (peek().kind == Tok::Ident) {
      h.name = advance().text;
    } else if (is_sym("_")) {
      advance();
      h.name = "_";
    } else {
      fail("a binding name", {"identifier", "_"});
    }
    while (starts_param()) h.params.push_back(param());
    expect_sym("=");
    h.body = bind_patterns(h.params, expr());
    return h;
  }

  static std::vector<std::string> names(const std::vector<Param>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.name);
    return out;
  }
  static std::vector<Span> spans(const std::vector<Param>& ps) {
    std::vector<Span> out;
    for (const auto& p : ps) out.push_back(p.span);
    return out;
  }

  Binding top_binding() {
    std::uint32_t begin = here();
    std::size_t save = pos_;
    advance();  // let
    Head h = let_head();
    if (is_kw("in")) {
      pos_ = save;
      ExprPtr e = expr();
      Binding b;
      b.name = "_";
      b.body = e;
      b.span = e->span;
      return b;
    }
    Binding b;
    b.name = h.name;
    b.recursive = h.recursive;
    b.params = names(h.params);
    b.param_spans = spans(h.params);
    b.body = h.body;
    b.span = span_from(begin);
    // Leading lambdas count as parameters so the function keeps its name.
    while (b.body->kind == ExprKind::Lam) {
      b.params.push_back(b.body->name);
      b.param_spans.push_back(Span{b.body->span.begin, b.body->kids[0]->span.begin});
      b.body = b.body->kids[0];
    }
    return b;
  }

  // Expressions -----------------------------------------------------------

  ExprPtr expr() {
    std::uint32_t begin = here();
    ExprPtr first = or_expr();
    if (!is_sym(",")) return first;
    std::vector<ExprPtr> items{first};
    while (is_sym(",")) {
      advance();
      items.push_back(or_expr());
    }
    return tuple(items, begin);
  }

  ExprPtr tuple(const std::vector<ExprPtr>& items, std::uint32_t begin) {
    ExprPtr acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) {
      Span s = i == 0 ? span_from(begin) : merge(items[i]->span, acc->span);
      acc = mk_pair(items[i], acc, s);
    }
    return acc;
  }

  bool starts_open() const {
    return is_kw("let") || is_kw("fun") || is_kw("function") || is_kw("match") || is_kw("if");
  }

  ExprPtr open_expr() {
    std::uint32_t begin = here();
    if (is_kw("let")) {
      advance();
      Head h = let_head();
      expect_kw("in");
      ExprPtr in = expr();
      Span s = span_from(begin);
      if (h.params.empty() && !h.recursive) return mk_let(h.name, h.body, in, s);
      ExprPtr body = h.body;
      std::vector<std::string> ps = names(h.params);
      std::vector<Span> pspans = spans(h.params);
      if (ps.empty()) {
        while (body->kind == ExprKind::Lam) {
          ps.push_back(body->name);
          pspans.push_back(Span{body->span.begin, body->kids[0]->span.begin});
          body = body->kids[0];
        }
      }
      if (ps.empty()) return mk_let(h.name, h.body, in, s);
      return mk_letrec(h.name, ps, pspans, body, in, s, h.recursive);
    }
    if (is_kw("fun")) {
      advance();
      std::vector<Param> params;
      while (starts_param()) params.push_back(param());
      if (params.empty()) fail("a parameter", {"identifier", "pattern"});
      expect_sym("->");
      ExprPtr body = bind_patterns(params, expr());
      for (auto it = params.rbegin(); it != params.rend(); ++it)
        body = mk_lam(it->name, body, Span{it->span.begin, body->span.end});
      return with_span(body, span_from(begin));
    }
    if (is_kw("function")) {
      advance();
      std::string x = fresh_name();
      auto [pats, bodies] = cases();
      Span s = span_from(begin);
      return mk_lam(x, mk_match(mk_var(x, s), pats, bodies, s), s);
    }
    if (is_kw("match")) {
      advance();
      ExprPtr scrutinee = expr();
      expect_kw("with");
      auto [pats, bodies] = cases();
      return mk_match(scrutinee, pats, bodies, span_from(begin));
    }
    advance();  // if
    ExprPtr c = expr();
    expect_kw("then");
    ExprPtr t = expr();
    expect_kw("else");
    ExprPtr f = expr();
    return mk_if(c, t, f, span_from(begin));
  }

  std::pair<std::vector<PatternPtr>, std::vector<ExprPtr>> cases() {
    std::vector<PatternPtr> pats;
    std::vector<ExprPtr> bodies;
    if (is_sym("|")) advance();
    for (;;) {
      pats.push_back(pattern());
      expect_sym("->");
      bodies.push_back(expr());
      if (!is_sym("|")) break;
      advance();
    }
    for (const auto& p : pats) check_linear(p);
    return {pats, bodies};
  }

  void check_linear(const PatternPtr& p) {
    std::vector<std::string> vars;
    pattern_vars(p, vars);
    std::set<std::string> seen;
    for (const auto& v : vars) {
      if (!seen.insert(v).second)
        throw ParseFailure(ParseError{p->span, "variable " + v + " is bound twice in a pattern", {}});
    }
  }

  // Binary operators, lowest precedence first.
  ExprPtr or_expr() { return right_assoc(&Parser::and_expr, {"||"}, {PrimOp::Or}); }
  ExprPtr and_expr() { return right_assoc(&Parser::cmp_expr, {"&&"}, {PrimOp::And}); }
  ExprPtr cmp_expr() {
    return left_assoc(&Parser::append_expr, {"=", "<>", "<", "<=", ">", ">="},
                      {PrimOp::Eq, PrimOp::Ne, PrimOp::Lt, PrimOp::Le, PrimOp::Gt, PrimOp::Ge});
  }
  ExprPtr append_expr() { return right_assoc(&Parser::cons_expr, {"@"}, {PrimOp::Append}); }
  ExprPtr cons_expr() { return right_assoc(&Parser::add_expr, {"::"}, {PrimOp::Cons}); }
  ExprPtr add_expr() {
    return left_assoc(&Parser::mul_expr, {"+", "-"}, {PrimOp::Add, PrimOp::Sub});
  }
  ExprPtr mul_expr() {
    return left_assoc(&Parser::unary_expr, {"*", "/", "mod"},
                      {PrimOp::Mul, PrimOp::Div, PrimOp::Mod});
  }

  int match_op(const std::vector<const char*>& syms) const {
    const Token& t = peek();
    if (t.kind != Tok::Sym && t.kind != Tok::Keyword) return -1;
    for (std::size_t i = 0; i < syms.size(); ++i)
      if (t.text == syms[i]) return static_cast<int>(i);
    return -1;
  }

  using Level = ExprPtr (Parser::*)();

  ExprPtr left_assoc(Level next, const std::vector<const char*>& syms,
                     const std::vector<PrimOp>& ops) {
    std::uint32_t begin = here();
    ExprPtr lhs = (this->*next)();
    for (int i; (i = match_op(syms)) >= 0;) {
      advance();
      ExprPtr rhs = (this->*next)();
      lhs = mk_prim(ops[i], lhs, rhs, span_from(begin));
    }
    return lhs;
  }

  ExprPtr right_assoc(Level next, const std::vector<const char*>& syms,
                      const std::vector<PrimOp>& ops) {
    std::uint32_t begin = here();
    ExprPtr lhs = (this->*next)();
    int i = match_op(syms);
    if (i < 0) return lhs;
    advance();
    ExprPtr rhs = right_assoc(next, syms, ops);
    return mk_prim(ops[i], lhs, rhs, span_from(begin));
  }

  ExprPtr unary_expr() {
    if (is_sym("-")) {
      std::uint32_t begin = here();
      advance();
      if (peek().kind == Tok::Int && peek().span.begin == last_span().end) {
        Token t = advance();
        return mk_int(-t.value, span_from(begin));
      }
      ExprPtr operand = unary_expr();
      return mk_prim(PrimOp::Sub, mk_int(0, Span{begin, begin + 1}), operand, span_from(begin));
    }
    return app_expr();
  }

  bool starts_atom() const {
    const Token& t = peek();
    return t.kind == Tok::Ident || t.kind == Tok::Int || t.kind == Tok::Ctor ||
           is_kw("true") || is_kw("false") || is_sym("(") || is_sym("[");
  }

  ExprPtr app_expr() {
    if (starts_open()) return open_expr();
    std::uint32_t begin = here();
    ExprPtr head = atom();
    while (starts_atom()) {
      ExprPtr arg = atom();
      head = mk_app(head, arg, span_from(begin));
    }
    return head;
  }

  ExprPtr atom() {
    std::uint32_t begin = here();
    const Token& t = peek();
    if (t.kind == Tok::Ident) return mk_var(advance().text, t.span);
    if (t.kind == Tok::Int) {
      Token n = advance();
      return mk_int(n.value, n.span);
    }
    if (is_kw("true") || is_kw("false")) {
      Token b = advance();
      return mk_bool(b.text == "true", b.span);
    }
    if (t.kind == Tok::Ctor) {
      Token c = advance();
      if (c.text == "Leaf") return mk_leaf(t_generic(), c.span);
      if (c.text == "Node") {
        ExprPtr arg = atom();
        if (arg->kind != ExprKind::Pair || arg->kids[1]->kind != ExprKind::Pair)
          throw ParseFailure(ParseError{arg->span, "Node expects a triple", {"(value, left, right)"}});
        const ExprPtr& rest = arg->kids[1];
        return mk_node_ctor(arg->kids[0], rest->kids[0], rest->kids[1], span_from(begin));
      }
      throw ParseFailure(ParseError{c.span, "unknown constructor " + c.text, {"Leaf", "Node"}});
    }
    if (is_sym("[")) {
      advance();
      std::vector<ExprPtr> items;
      if (!is_sym("]")) {
        items.push_back(or_expr());
        while (is_sym(";")) {
          advance();
          if (is_sym("]")) break;
          items.push_back(or_expr());
        }
      }
      expect_sym("]");
      Span whole = span_from(begin);
      ExprPtr acc = mk_list(t_generic(), {}, items.empty() ? whole : Span{last_span().begin, whole.end});
      for (auto it = items.rbegin(); it != items.rend(); ++it)
        acc = mk_prim(PrimOp::Cons, *it, acc, it == items.rend() - 1 ? whole : Span{(*it)->span.begin, whole.end});
      return acc;
    }
    if (is_sym("(")) {
      advance();
      ExprPtr inner = expr();
      if (is_sym(":")) {
        advance();
        TypePtr ty = type();
        inner = annotate(inner, ty);
      }
      expect_sym(")");
      return with_span(inner, span_from(begin));
    }
    fail("an expression", {"identifier", "literal", "(", "["});
  }

  ExprPtr annotate(const ExprPtr& e, const TypePtr& ty) {
    if (e->kind == ExprKind::List && e->kids.empty() && ty->kind == TypeKind::List) {
      return mk_list(ty->first, {}, e->span);
    }
    if (e->kind == ExprKind::Leaf && ty->kind == TypeKind::Tree) return mk_leaf(ty->first, e->span);
    throw ParseFailure(ParseError{e->span, "annotations are only allowed on [] and Leaf", {}});
  }

  // Types: only for element labels.
  TypePtr type() {
    TypePtr first = type_postfix();
    if (!is_sym("*")) return first;
    advance();
    return t_prod(first, type());
  }

  TypePtr type_postfix() {
    TypePtr t = type_atom();
    while (peek().kind == Tok::Ident && (peek().text == "list" || peek().text == "tree")) {
      t = advance().text == "list" ? t_list(t) : t_tree(t);
    }
    return t;
  }

  TypePtr type_atom() {
    if (peek().kind == Tok::Ident) {
      std::string n = peek().text;
      if (n == "int") { advance(); return t_int(); }
      if (n == "bool") { advance(); return t_bool(); }
    }
    if (is_kw("fun")) {
      advance();
      return t_fun();
    }
    if (is_sym("'")) {
      advance();
      if (peek().kind != Tok::Ident) fail("a type variable", {"identifier"});
      std::string n = advance().text;
      auto [it, inserted] = type_vars_.emplace(n, HoleId{static_cast<std::uint32_t>(type_vars_.size() + 1)});
      return t_hole(it->second);
    }
    if (is_sym("(")) {
      advance();
      TypePtr t = type();
      expect_sym(")");
      return t;
    }
    fail("a type", {"int", "bool", "'a", "("});
  }

  // Patterns --------------------------------------------------------------

  PatternPtr pattern() {
    std::uint32_t begin = here();
    PatternPtr first = cons_pattern();
    if (!is_sym(",")) return first;
    std::vector<PatternPtr> items{first};
    while (is_sym(",")) {
      advance();
      items.push_back(cons_pattern());
    }
    PatternPtr acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) {
      Span s = i == 0 ? span_from(begin) : merge(items[i]->span, acc->span);
      acc = mk_pat(PatKind::Pair, {items[i], acc}, {}, 0, s);
    }
    return acc;
  }

  PatternPtr cons_pattern() {
    std::uint32_t begin = here();
    PatternPtr head = atom_pattern();
    if (!is_sym("::")) return head;
    advance();
    PatternPtr tail = cons_pattern();
    return mk_pat(PatKind::Cons, {head, tail}, {}, 0, span_from(begin));
  }

  PatternPtr atom_pattern() {
    std::uint32_t begin = here();
    const Token& t = peek();
    if (is_sym("_")) {
      advance();
      return mk_pat(PatKind::Wild, {}, {}, 0, t.span);
    }
    if (t.kind == Tok::Ident) {
      Token v = advance();
      return mk_pat(PatKind::Var, {}, v.text, 0, v.span);
    }
    if (t.kind == Tok::Int) {
      Token n = advance();
      return mk_pat(PatKind::Int, {}, {}, n.value, n.span);
    }
    if (is_sym("-") && peek(1).kind == Tok::Int) {
      advance();
      Token n = advance();
      return mk_pat(PatKind::Int, {}, {}, -n.value, span_from(begin));
    }
    if (is_kw("true") || is_kw("false")) {
      Token b = advance();
      return mk_pat(PatKind::Bool, {}, {}, b.text == "true" ? 1 : 0, b.span);
    }
    if (t.kind == Tok::Ctor) {
      Token c = advance();
      if (c.text == "Leaf") return mk_pat(PatKind::Leaf, {}, {}, 0, c.span);
      if (c.text == "Node") {
        PatternPtr arg = atom_pattern();
        if (arg->kind != PatKind::Pair || arg->kids[1]->kind != PatKind::Pair)
          throw ParseFailure(ParseError{arg->span, "Node pattern expects a triple", {"(v, l, r)"}});
        return mk_pat(PatKind::Node, {arg->kids[0], arg->kids[1]->kids[0], arg->kids[1]->kids[1]}, {},
                      0, span_from(begin));
      }
      throw ParseFailure(ParseError{c.span, "unknown constructor " + c.text, {"Leaf", "Node"}});
    }
    if (is_sym("[")) {
      advance();
      std::vector<PatternPtr> items;
      if (!is_sym("]")) {
        items.push_back(pattern());
        while (is_sym(";")) {
          advance();
          if (is_sym("]")) break;
          items.push_back(pattern());
        }
      }
      expect_sym("]");
      Span whole = span_from(begin);
      PatternPtr acc = mk_pat(PatKind::Nil, {}, {}, 0, whole);
      for (auto it = items.rbegin(); it != items.rend(); ++it)
        acc = mk_pat(PatKind::Cons, {*it, acc}, {}, 0, whole);
      return acc;
    }
    if (is_sym("(")) {
      advance();
      PatternPtr inner = pattern();
      expect_sym(")");
      auto copy = std::make_shared<Pattern>(*inner);
      copy->span = span_from(begin);
      return copy;
    }
    fail("a pattern", {"_", "identifier", "literal", "[", "("});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int fresh_ = 0;
  std::map<std::string, HoleId> type_vars_;
};

}  // namespace

Program parse_program(const SourceFile& src) { return Parser(src.text()).program(); }

ExprPtr parse_expr(const std::string& text) { return Parser(text).single_expr(); }

std::string entry_name(const Program& program, const std::string& entry) {
  if (program.bindings.empty()) throw std::invalid_argument("program has no bindings");
  if (entry.empty()) return program.bindings.back().name;
  for (const auto& b : program.bindings)
    if (b.name == entry) return entry;
  throw std::invalid_argument("no binding named " + entry);
}

ExprPtr link_entry(const Program& program, const std::string& entry) {
  if (program.bindings.empty()) throw std::invalid_argument("program has no bindings");
  std::size_t target = program.bindings.size();
  if (entry.empty()) {
    target = program.bindings.size() - 1;
  } else {
    for (std::size_t i = 0; i < program.bindings.size(); ++i)
      if (program.bindings[i].name == entry) target = i;
  }
  if (target == program.bindings.size()) throw std::invalid_argument("no binding named " + entry);

  std::map<std::string, ExprPtr> env;
  ExprPtr result;
  for (std::size_t i = 0; i <= target; ++i) {
    const Binding& b = program.bindings[i];
    ExprPtr denotation;
    if (b.params.empty()) {
      denotation = substitute(b.body, env, true);
    } else {
      auto inner = env;
      if (b.recursive) inner.erase(b.name);
      for (const auto& p : b.params) inner.erase(p);
      auto def = std::make_shared<FunDef>();
      def->name = b.name;
      def->recursive = b.recursive;
      def->params = b.params;
      def->param_spans = b.param_spans;
      def->body = substitute(b.body, inner, true);
      def->span = b.span;
      denotation = mk_funref(def, b.span);
    }
    if (i == target) result = denotation;
    if (b.name != "_") env[b.name] = denotation;
  }
  return result;
}

}  // namespace witness
