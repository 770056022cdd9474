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

namespace witness {
namespace {

// Binding strength, loosest first.
enum Level : int {
  kOpen = 0,  // let, fun, match, if
  kTuple = 1,
  kOr = 2,
  kAnd = 3,
  kCmp = 4,
  kAppend = 5,
  kCons = 6,
  kAdd = 7,
  kMul = 8,
  kUnary = 9,
  kApp = 10,
  kAtom = 11,
};

int op_level(PrimOp op) {
  switch (op) {
    case PrimOp::Or: return kOr;
    case PrimOp::And: return kAnd;
    case PrimOp::Append: return kAppend;
    case PrimOp::Cons: return kCons;
    case PrimOp::Add:
    case PrimOp::Sub:
      return kAdd;
    case PrimOp::Mul:
    case PrimOp::Div:
    case PrimOp::Mod:
      return kMul;
    default:
      return kCmp;
  }
}

bool right_assoc(PrimOp op) {
  return op == PrimOp::Or || op == PrimOp::And || op == PrimOp::Append || op == PrimOp::Cons;
}

int level(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Let:
    case ExprKind::LetRec:
    case ExprKind::Lam:
    case ExprKind::Match:
    case ExprKind::If:
      return kOpen;
    case ExprKind::Prim:
      return op_level(e->op);
    case ExprKind::App:
    case ExprKind::NodeCtor:
    case ExprKind::NodeValue:
      return kApp;
    case ExprKind::Int:
      return e->num < 0 ? kUnary : kAtom;
    default:
      return kAtom;
  }
}

void print_pattern(std::string& out, const PatternPtr& p, bool atom) {
  switch (p->kind) {
    case PatKind::Wild: out += "_"; break;
    case PatKind::Var: out += p->name; break;
    case PatKind::Int:
      if (p->num < 0) out += "(" + std::to_string(p->num) + ")";
      else out += std::to_string(p->num);
      break;
    case PatKind::Bool: out += p->num ? "true" : "false"; break;
    case PatKind::Nil: out += "[]"; break;
    case PatKind::Leaf: out += "Leaf"; break;
    case PatKind::Pair:
      out += "(";
      print_pattern(out, p->kids[0], false);
      out += ", ";
      print_pattern(out, p->kids[1], false);
      out += ")";
      break;
    case PatKind::Cons:
      if (atom) out += "(";
      print_pattern(out, p->kids[0], true);
      out += " :: ";
      print_pattern(out, p->kids[1], false);
      if (atom) out += ")";
      break;
    case PatKind::Node:
      if (atom) out += "(";
      out += "Node (";
      for (std::size_t i = 0; i < 3; ++i) {
        if (i) out += ", ";
        print_pattern(out, p->kids[i], false);
      }
      out += ")";
      if (atom) out += ")";
      break;
  }
}

class Printer {
 public:
  explicit Printer(const Path* target) : target_(target) {}

  void print(const ExprPtr& e, int need) {
    bool paren = level(e) < need;
    if (paren) out += "(";
    bool here = target_ && path_ == *target_;
    if (here) begin = static_cast<std::uint32_t>(out.size());
    body(e);
    if (here) end = static_cast<std::uint32_t>(out.size());
    if (paren) out += ")";
  }

  std::string out;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

 private:
  void kid(const ExprPtr& e, std::size_t index, int need) {
    path_.push_back(static_cast<std::uint32_t>(index));
    print(e->kids[index], need);
    path_.pop_back();
  }

  void body(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::Var:
      case ExprKind::FunRef:
        out += e->name;
        break;
      case ExprKind::Int:
        out += std::to_string(e->num);
        break;
      case ExprKind::Bool:
        out += e->num ? "true" : "false";
        break;
      case ExprKind::Hole:
        out += "?a" + std::to_string(e->hole.value);
        break;
      case ExprKind::Lam:
        out += "fun " + e->name + " -> ";
        kid(e, 0, kOpen);
        break;
      case ExprKind::App:
        kid(e, 0, kApp);
        out += " ";
        kid(e, 1, kAtom);
        break;
      case ExprKind::Prim: {
        int l = op_level(e->op);
        bool right = right_assoc(e->op);
        kid(e, 0, right ? l + 1 : l);
        out += " ";
        out += prim_symbol(e->op);
        out += " ";
        kid(e, 1, right ? l : l + 1);
        break;
      }
      case ExprKind::If:
        out += "if ";
        kid(e, 0, kOpen);
        out += " then ";
        kid(e, 1, kOpen);
        out += " else ";
        kid(e, 2, kOpen);
        break;
      case ExprKind::Pair:
        out += "(";
        kid(e, 0, kTuple + 1);
        out += ", ";
        kid(e, 1, kTuple + 1);
        out += ")";
        break;
      case ExprKind::List:
        out += "[";
        for (std::size_t i = 0; i < e->kids.size(); ++i) {
          if (i) out += "; ";
          kid(e, i, kTuple + 1);
        }
        out += "]";
        break;
      case ExprKind::Leaf:
        out += "Leaf";
        break;
      case ExprKind::NodeValue:
      case ExprKind::NodeCtor:
        out += "Node (";
        for (std::size_t i = 0; i < 3; ++i) {
          if (i) out += ", ";
          kid(e, i, kTuple + 1);
        }
        out += ")";
        break;
      case ExprKind::Match:
        out += "match ";
        kid(e, 0, kOpen);
        out += " with";
        for (std::size_t i = 0; i < e->patterns.size(); ++i) {
          out += " | ";
          print_pattern(out, e->patterns[i], false);
          out += " -> ";
          kid(e, i + 1, i + 1 == e->patterns.size() ? kOpen : kTuple);
        }
        break;
      case ExprKind::Let:
        out += "let " + e->name + " = ";
        kid(e, 0, kOpen);
        out += " in ";
        kid(e, 1, kOpen);
        break;
      case ExprKind::LetRec:
        out += e->num ? "let rec " : "let ";
        out += e->name;
        for (const auto& p : e->params) out += " " + p;
        out += " = ";
        kid(e, 0, kOpen);
        out += " in ";
        kid(e, 1, kOpen);
        break;
    }
  }

  const Path* target_;
  Path path_;
};

}  // namespace

std::string pretty(const ExprPtr& e) {
  Printer p(nullptr);
  p.print(e, kOpen);
  return p.out;
}

std::string pretty(const PatternPtr& p) {
  std::string out;
  print_pattern(out, p, false);
  return out;
}

Highlighted pretty_highlight(const ExprPtr& e, const Path& path) {
  Printer p(&path);
  p.print(e, kOpen);
  return Highlighted{p.out, p.begin, p.end};
}

}  // namespace witness
