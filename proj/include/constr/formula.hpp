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

#ifndef CONSTR_FORMULA_HPP
#define CONSTR_FORMULA_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"

namespace constr {

/// A coalition as written in a formula: sorted, duplicate-free agent names.
/// Names are resolved against a model only at evaluation time.
class AgentSet {
public:
  AgentSet() = default;
  AgentSet(std::initializer_list<std::string> names) : names_(names) { normalize(); }
  explicit AgentSet(std::vector<std::string> names) : names_(std::move(names)) { normalize(); }

  const std::vector<std::string>& names() const { return names_; }
  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

  friend bool operator==(const AgentSet&, const AgentSet&) = default;
  friend auto operator<=>(const AgentSet&, const AgentSet&) = default;

private:
  void normalize() {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  }

  std::vector<std::string> names_;
};

/// Core connectives. Derived operators are desugared on construction.
enum class Op { Atom, Top, Not, And, Oc, Oalpha, Obeta };

inline bool is_strategic(Op op) { return op == Op::Oc || op == Op::Oalpha || op == Op::Obeta; }

inline const char* operator_token(Op op) {
  switch (op) {
  case Op::Oc: return "Oc";
  case Op::Oalpha: return "Oa";
  case Op::Obeta: return "Ob";
  default: return "";
  }
}

/// Immutable, structurally compared formula handle. Copies share nodes.
class Formula {
public:
  struct Node {
    Op op;
    std::string atom;
    AgentSet a;
    AgentSet b;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  Formula() : Formula(make(Op::Top, {}, {}, {}, nullptr, nullptr)) {}

  Op op() const { return node_->op; }
  const std::string& atom_name() const { return node_->atom; }
  /// First coalition (A) of a strategic operator.
  const AgentSet& coalition_a() const { return node_->a; }
  /// Second coalition (B) of a strategic operator.
  const AgentSet& coalition_b() const { return node_->b; }
  /// Operand of Not, left conjunct, or first argument of an operator.
  Formula lhs() const { return Formula(node_->lhs); }
  /// Right conjunct or second argument of an operator.
  Formula rhs() const { return Formula(node_->rhs); }

  std::size_t hash() const { return node_->hash; }
  /// Number of AST nodes.
  std::size_t size() const { return node_->size; }
  const Node* node() const { return node_.get(); }
  const std::shared_ptr<const Node>& shared_node() const { return node_; }
  static Formula from_node(std::shared_ptr<const Node> n) { return Formula(std::move(n)); }

  friend bool operator==(const Formula& x, const Formula& y) { return equal(x.node_.get(), y.node_.get()); }

  static Formula make(Op op, std::string atom, AgentSet a, AgentSet b, std::shared_ptr<const Node> lhs,
                      std::shared_ptr<const Node> rhs) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->atom = std::move(atom);
    n->a = std::move(a);
    n->b = std::move(b);
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    std::size_t h = std::hash<int>{}(static_cast<int>(op)) * 0x100000001b3ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<std::string>{}(n->atom));
    for (const auto& x : n->a) mix(std::hash<std::string>{}(x));
    mix(0xa5a5);
    for (const auto& x : n->b) mix(std::hash<std::string>{}(x));
    if (n->lhs) {
      mix(n->lhs->hash);
      n->size += n->lhs->size;
    }
    if (n->rhs) {
      mix(n->rhs->hash);
      n->size += n->rhs->size;
    }
    n->hash = h;
    return Formula(std::move(n));
  }

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (x == nullptr || y == nullptr) return false;
    if (x->hash != y->hash || x->op != y->op || x->atom != y->atom || x->a != y->a || x->b != y->b) return false;
    return equal(x->lhs.get(), y->lhs.get()) && equal(x->rhs.get(), y->rhs.get());
  }

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Core constructors.

inline Formula atom(std::string name) { return Formula::make(Op::Atom, std::move(name), {}, {}, nullptr, nullptr); }
inline Formula top() { return Formula::make(Op::Top, {}, {}, {}, nullptr, nullptr); }
inline Formula neg(const Formula& f) { return Formula::make(Op::Not, {}, {}, {}, f.shared_node(), nullptr); }

inline Formula conj(const Formula& l, const Formula& r) {
  return Formula::make(Op::And, {}, {}, {}, l.shared_node(), r.shared_node());
}

inline Formula strategic(Op op, AgentSet a, AgentSet b, const Formula& phi, const Formula& psi) {
  if (!is_strategic(op)) throw InputError("not a strategic operator");
  return Formula::make(op, {}, std::move(a), std::move(b), phi.shared_node(), psi.shared_node());
}

/// Oc(A,B)(phi, psi): A can guarantee phi while enabling B to also guarantee psi.
inline Formula oc(AgentSet a, AgentSet b, const Formula& phi, const Formula& psi) {
  return strategic(Op::Oc, std::move(a), std::move(b), phi, psi);
}
/// Oα(A,B)(phi, psi): B has one action securing psi against every phi-guaranteeing action of A.
inline Formula oalpha(AgentSet a, AgentSet b, const Formula& phi, const Formula& psi) {
  return strategic(Op::Oalpha, std::move(a), std::move(b), phi, psi);
}
/// Oβ(A,B)(phi, psi): each phi-guaranteeing action of A has a psi-securing response of B.
inline Formula obeta(AgentSet a, AgentSet b, const Formula& phi, const Formula& psi) {
  return strategic(Op::Obeta, std::move(a), std::move(b), phi, psi);
}

// Derived forms, each with one canonical desugaring.

inline Formula bottom() { return neg(top()); }
inline Formula disj(const Formula& l, const Formula& r) { return neg(conj(neg(l), neg(r))); }
inline Formula implies(const Formula& l, const Formula& r) { return neg(conj(l, neg(r))); }
inline Formula iff(const Formula& l, const Formula& r) { return conj(implies(l, r), implies(r, l)); }

/// The coalition-logic box [A]phi, as Oα(∅, A)(⊤, phi).
inline Formula coalition_box(AgentSet a, const Formula& phi) { return oalpha({}, std::move(a), top(), phi); }

/// ⟨⟨A⟩⟩^b(phi; psi) := Oβ(A, ∅)(phi, psi).
inline Formula cond_box(AgentSet a, const Formula& phi, const Formula& psi) {
  return obeta(std::move(a), {}, phi, psi);
}

/// ⟨⟨A⟩⟩^d(phi; psi) := ¬⟨⟨A⟩⟩^b(phi; ¬psi).
inline Formula cond_diamond(AgentSet a, const Formula& phi, const Formula& psi) {
  return neg(cond_box(std::move(a), phi, neg(psi)));
}

/// Nesting depth of strategic operators.
inline std::size_t modal_depth(const Formula& f) {
  switch (f.op()) {
  case Op::Atom:
  case Op::Top: return 0;
  case Op::Not: return modal_depth(f.lhs());
  case Op::And: return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
  default: return 1 + std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
  }
}

/// Every agent name mentioned in a coalition of `f`, sorted.
inline std::vector<std::string> mentioned_agents(const Formula& f) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (is_strategic(g.op())) {
      out.insert(out.end(), g.coalition_a().begin(), g.coalition_a().end());
      out.insert(out.end(), g.coalition_b().begin(), g.coalition_b().end());
    }
    if (g.op() == Op::Not || g.op() == Op::And || is_strategic(g.op())) walk(g.lhs());
    if (g.op() == Op::And || is_strategic(g.op())) walk(g.rhs());
  };
  walk(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace constr

#endif // CONSTR_FORMULA_HPP
