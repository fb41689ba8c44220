// Copyright 2026 The LocoSTL Authors
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

#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "locostl/stl/ast.hpp"

namespace locostl::stl {

/// Parse failure; offset is 1-based into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Grammar (precedence: !, temporal, &, |; parentheses override):
//   orExpr   := andExpr ('|' andExpr)*
//   andExpr  := untilExpr ('&' untilExpr)*
//   untilExpr:= unary ('U' '[' INT ',' INT ']' unary)?
//   unary    := '!' unary | 'F' window unary | 'G' window unary
//             | '(' orExpr ')' | IDENT
class Parser {
 public:
  Parser(std::string text, const PredicateRegistry& registry)
      : text_(std::move(text)), registry_(registry) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_or();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  FormulaPtr parse_or() {
    std::vector<FormulaPtr> terms{parse_and()};
    while (peek() == '|') {
      ++pos_;
      terms.push_back(parse_and());
    }
    return terms.size() == 1 ? terms[0] : disjunction(std::move(terms));
  }

  FormulaPtr parse_and() {
    std::vector<FormulaPtr> terms{parse_until()};
    while (peek() == '&') {
      ++pos_;
      terms.push_back(parse_until());
    }
    return terms.size() == 1 ? terms[0] : conjunction(std::move(terms));
  }

  FormulaPtr parse_until() {
    FormulaPtr lhs = parse_unary();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'U' && !is_ident_char(pos_ + 1)) {
      ++pos_;
      auto [a, b] = parse_window();
      FormulaPtr rhs = parse_unary();
      return until(a, b, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return negate(parse_unary());
    }
    if ((c == 'F' || c == 'G') && !is_ident_char(pos_ + 1)) {
      ++pos_;
      auto [a, b] = parse_window();
      FormulaPtr child = parse_unary();
      return c == 'F' ? eventually(a, b, std::move(child))
                      : always(a, b, std::move(child));
    }
    if (c == '(') {
      ++pos_;
      FormulaPtr f = parse_or();
      expect(')');
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_predicate();
    fail("expected formula");
  }

  FormulaPtr parse_predicate() {
    std::size_t start = pos_;
    while (is_ident_char(pos_)) ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    PredicatePtr p = registry_.find(name);
    if (!p)
      throw ParseError("unknown predicate '" + name + "'", start + 1);
    return pred(p);
  }

  std::pair<int, int> parse_window() {
    expect('[');
    int a = parse_int();
    expect(',');
    std::size_t b_at = pos_;
    int b = parse_int();
    expect(']');
    if (a > b) throw ParseError("inverted interval", b_at + 1);
    return {a, b};
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  bool is_ident_char(std::size_t i) const {
    if (i >= text_.size()) return false;
    char c = text_[i];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_ + 1);
  }

  std::string text_;
  const PredicateRegistry& registry_;
  std::size_t pos_ = 0;
};

inline FormulaPtr parse_stl(const std::string& text,
                            const PredicateRegistry& registry) {
  return Parser(text, registry).parse();
}

/// Canonical text form; parse(print(f)) is structurally equal to f.
inline std::string print_formula(const Formula& f) {
  auto paren = [](const Formula& child, std::string s) {
    switch (child.kind) {
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Until:
        return "(" + s + ")";
      default:
        return s;
    }
  };
  std::ostringstream os;
  switch (f.kind) {
    case NodeKind::Pred:
      os << f.pred->name;
      break;
    case NodeKind::Not:
      os << "!" << paren(*f.children[0], print_formula(*f.children[0]));
      break;
    case NodeKind::And: {
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) os << " & ";
        const Formula& c = *f.children[i];
        std::string s = print_formula(c);
        bool parens = c.kind == NodeKind::Or || c.kind == NodeKind::And;
        os << (parens ? "(" + s + ")" : s);
      }
      break;
    }
    case NodeKind::Or: {
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) os << " | ";
        const Formula& c = *f.children[i];
        std::string s = print_formula(c);
        os << (c.kind == NodeKind::Or ? "(" + s + ")" : s);
      }
      break;
    }
    case NodeKind::Eventually:
    case NodeKind::Always:
      os << (f.kind == NodeKind::Eventually ? "F[" : "G[") << f.t1 << ","
         << f.t2 << "] "
         << paren(*f.children[0], print_formula(*f.children[0]));
      break;
    case NodeKind::Until: {
      std::string lhs = print_formula(*f.children[0]);
      std::string rhs = print_formula(*f.children[1]);
      os << paren(*f.children[0], lhs) << " U[" << f.t1 << "," << f.t2 << "] "
         << paren(*f.children[1], rhs);
      break;
    }
  }
  return os.str();
}

}  // namespace locostl::stl
