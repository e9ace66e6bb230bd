/*
 * Copyright 2026 The ConStR Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CONSTR_FORMULA_IO_HPP
#define CONSTR_FORMULA_IO_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"

namespace constr {

// Concrete syntax, loosest to tightest binding:
//
//   formula  ::= implies ( "<->" implies )*
//   implies  ::= or ( "->" implies )?            right associative
//   or       ::= and ( "|" and )*
//   and      ::= unary ( "&" unary )*
//   unary    ::= "~" unary | "[" coal "]" unary | primary
//   primary  ::= "true" | "false" | IDENT | "(" formula ")"
//              | ("Oc" | "Oa" | "Ob") "[" coal "," coal "]" "(" formula "," formula ")"
//              | ("Cb" | "Cd") "[" coal "]" "(" formula "," formula ")"
//   coal     ::= "{" [ IDENT ( "," IDENT )* ] "}"
//
// IDENT is [A-Za-z_][A-Za-z0-9_']*. "[A] f" is the coalition box, "Cb"/"Cd"
// are the conditional box and diamond. Derived forms are desugared while
// parsing, so the result is always a core formula.

namespace detail {

class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    skip_ws();
    if (at_end()) error("empty formula");
    Formula f = parse_iff();
    skip_ws();
    if (!at_end()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

private:
  Formula parse_iff() {
    Formula f = parse_implies();
    while (accept("<->")) f = iff(f, parse_implies());
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (peek_is("<->")) return f;
    if (accept("->")) return implies(f, parse_implies());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept("~")) return neg(parse_unary());
    skip_ws();
    if (peek_is("[")) {
      expect("[");
      AgentSet a = parse_coalition();
      expect("]");
      return coalition_box(std::move(a), parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    skip_ws();
    if (at_end()) error("unexpected end of formula");
    if (accept("(")) {
      Formula f = parse_iff();
      expect(")");
      return f;
    }
    const std::size_t start = pos_;
    if (!is_ident_start(text_[pos_])) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    std::string id = identifier();
    if (id == "true") return top();
    if (id == "false") return bottom();
    skip_ws();
    if (!peek_is("[")) {
      if (is_reserved(id)) error_at(start, "operator '" + id + "' needs arguments");
      return atom(std::move(id));
    }
    if (id == "Oc" || id == "Oa" || id == "Ob") {
      expect("[");
      AgentSet a = parse_coalition();
      expect(",");
      AgentSet b = parse_coalition();
      expect("]");
      auto [phi, psi] = parse_argument_pair();
      const Op op = id == "Oc" ? Op::Oc : id == "Oa" ? Op::Oalpha : Op::Obeta;
      return strategic(op, std::move(a), std::move(b), phi, psi);
    }
    if (id == "Cb" || id == "Cd") {
      expect("[");
      AgentSet a = parse_coalition();
      expect("]");
      auto [phi, psi] = parse_argument_pair();
      return id == "Cb" ? cond_box(std::move(a), phi, psi) : cond_diamond(std::move(a), phi, psi);
    }
    error_at(start, "unknown operator '" + id + "'");
  }

  std::pair<Formula, Formula> parse_argument_pair() {
    expect("(");
    Formula phi = parse_iff();
    expect(",");
    Formula psi = parse_iff();
    expect(")");
    return {phi, psi};
  }

  AgentSet parse_coalition() {
    expect("{");
    std::vector<std::string> names;
    skip_ws();
    if (accept("}")) return AgentSet(std::move(names));
    do {
      skip_ws();
      if (at_end() || !is_ident_start(text_[pos_])) error("expected agent name");
      names.push_back(identifier());
    } while (accept(","));
    expect("}");
    return AgentSet(std::move(names));
  }

  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  static bool is_reserved(const std::string& id) {
    return id == "Oc" || id == "Oa" || id == "Ob" || id == "Cb" || id == "Cd";
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (!at_end() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek_is(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) {
      if (at_end()) error("expected '" + std::string(tok) + "' but reached end of formula");
      error("expected '" + std::string(tok) + "'");
    }
  }

  [[noreturn]] void error(const std::string& what) const { error_at(pos_, what); }

  [[noreturn]] void error_at(std::size_t at, const std::string& what) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses formula text into a core formula (derived forms desugared).
/// Throws ParseError with line and column.
inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse(); }

inline std::string render(const AgentSet& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.names().size(); ++i) {
    if (i != 0) out += ",";
    out += c.names()[i];
  }
  return out + "}";
}

namespace detail {

// Precedence levels used by the printer, loosest first.
enum Prec { kTop = 0, kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

// Prints derived shapes with their own syntax: ~true as false,
// ~(~a & ~b) as a | b, ~(a & ~b) as a -> b. The parser desugars each back
// into the same core node, so round trips are exact.
inline void render_into(const Formula& f, std::string& out, int context) {
  auto wrap = [&](int prec, auto body) {
    if (prec < context) out += "(";
    body();
    if (prec < context) out += ")";
  };
  switch (f.op()) {
  case Op::Atom: out += f.atom_name(); return;
  case Op::Top: out += "true"; return;
  case Op::Not: {
    const Formula g = f.lhs();
    if (g.op() == Op::Top) {
      out += "false";
      return;
    }
    if (g.op() == Op::And && g.lhs().op() == Op::Not && g.rhs().op() == Op::Not) {
      wrap(kOr, [&] {
        render_into(g.lhs().lhs(), out, kOr);
        out += " | ";
        render_into(g.rhs().lhs(), out, kAnd);
      });
      return;
    }
    if (g.op() == Op::And && g.rhs().op() == Op::Not) {
      wrap(kImplies, [&] {
        render_into(g.lhs(), out, kOr);
        out += " -> ";
        render_into(g.rhs().lhs(), out, kImplies);
      });
      return;
    }
    out += "~";
    render_into(g, out, kUnary);
    return;
  }
  case Op::And:
    wrap(kAnd, [&] {
      render_into(f.lhs(), out, kAnd);
      out += " & ";
      render_into(f.rhs(), out, kUnary);
    });
    return;
  case Op::Oc:
  case Op::Oalpha:
  case Op::Obeta:
    out += operator_token(f.op());
    out += "[" + render(f.coalition_a()) + "," + render(f.coalition_b()) + "](";
    render_into(f.lhs(), out, kTop);
    out += ", ";
    render_into(f.rhs(), out, kTop);
    out += ")";
    return;
  }
}

} // namespace detail

/// Canonical text of a formula; parse_formula(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, out, detail::kTop);
  return out;
}

} // namespace constr

#endif // CONSTR_FORMULA_IO_HPP
