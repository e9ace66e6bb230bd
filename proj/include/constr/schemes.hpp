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

#ifndef CONSTR_SCHEMES_HPP
#define CONSTR_SCHEMES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "formula_io.hpp"
#include "game_model.hpp"
#include "generators.hpp"
#include "semantics.hpp"

namespace constr {

/// `lhs -> rhs`, or `lhs <-> rhs` when `both_ways`.
struct Implication {
  Formula lhs;
  Formula rhs;
  bool both_ways = false;

  Formula formula() const { return both_ways ? iff(lhs, rhs) : implies(lhs, rhs); }
};

/// One instance of a scheme. Axioms have no premises. A rule instance is
/// checked per model: if every premise holds at every state, so must the
/// conclusion.
struct Instance {
  std::vector<Implication> premises;
  Implication conclusion;
};

/// Values for metavariables.
struct InstanceContext {
  std::vector<std::string> agents;
  std::vector<Formula> formulas;       // φ, ψ in axioms
  std::vector<Formula> rule_formulas;  // φ, φ', ψ, ψ' in rules
};

struct Scheme {
  std::string id;
  std::string shape;  // human-readable template
  bool expected_valid = true;
  std::function<std::vector<Instance>(const InstanceContext&)> instantiate;
};

namespace detail {

struct CoalitionNames {
  Coalition mask;
  AgentSet names;
};

inline std::vector<CoalitionNames> coalitions_of(const std::vector<std::string>& agents) {
  std::vector<CoalitionNames> out;
  for (Coalition c : all_coalitions(agents.size())) {
    std::vector<std::string> names;
    for (auto a : c.members()) names.push_back(agents[a]);
    out.push_back({c, AgentSet(std::move(names))});
  }
  return out;
}

inline AgentSet names_of(const std::vector<std::string>& agents, Coalition c) {
  std::vector<std::string> names;
  for (auto a : c.members()) names.push_back(agents[a]);
  return AgentSet(std::move(names));
}

using OpFn = Formula (*)(AgentSet, AgentSet, const Formula&, const Formula&);

// op(A,B)(φ,ψ) -> op(A',B')(φ,ψ) for every A,B and each (A',B') from `widen`.
template <class Widen>
std::vector<Instance> coalition_shift(const InstanceContext& ctx, OpFn from, OpFn to, Widen widen) {
  std::vector<Instance> out;
  const auto cs = coalitions_of(ctx.agents);
  for (const auto& a : cs)
    for (const auto& b : cs)
      for (auto [a2, b2] : widen(a.mask, b.mask, Coalition::grand(ctx.agents.size())))
        for (const auto& phi : ctx.formulas)
          for (const auto& psi : ctx.formulas)
            out.push_back({{},
                           {from(a.names, b.names, phi, psi),
                            to(names_of(ctx.agents, a2), names_of(ctx.agents, b2), phi, psi), false}});
  return out;
}

// All supersets of `c` within `all`.
inline std::vector<Coalition> supersets(Coalition c, Coalition all) {
  std::vector<Coalition> out;
  const std::uint32_t free = (all - c).mask();
  for (std::uint32_t s = free;; s = (s - 1) & free) {
    out.push_back(c | Coalition(s));
    if (s == 0) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::vector<std::pair<Coalition, Coalition>> grow_a(Coalition a, Coalition b, Coalition all) {
  std::vector<std::pair<Coalition, Coalition>> out;
  for (Coalition a2 : supersets(a, all)) out.emplace_back(a2, b);
  return out;
}

inline std::vector<std::pair<Coalition, Coalition>> grow_b(Coalition a, Coalition b, Coalition all) {
  std::vector<std::pair<Coalition, Coalition>> out;
  for (Coalition b2 : supersets(b, all)) out.emplace_back(a, b2);
  return out;
}

// Per (A, B, φ, ψ) instances built by `make`.
template <class Make>
std::vector<Instance> per_ab(const InstanceContext& ctx, Make make) {
  std::vector<Instance> out;
  const auto cs = coalitions_of(ctx.agents);
  for (const auto& a : cs)
    for (const auto& b : cs)
      for (const auto& phi : ctx.formulas)
        for (const auto& psi : ctx.formulas) out.push_back(make(a, b, phi, psi));
  return out;
}

// Rule instances for op in model-global form. `first_up` says whether the
// rule strengthens the first argument (φ → φ') or weakens it (φ' → φ).
inline std::vector<Instance> mono_rule(const InstanceContext& ctx, OpFn op, bool first_up) {
  std::vector<Instance> out;
  const auto cs = coalitions_of(ctx.agents);
  const auto& pool = ctx.rule_formulas;
  // Coalitions innermost so instances sharing premises are adjacent.
  for (const auto& phi : pool)
    for (const auto& phi2 : pool)
      for (const auto& psi : pool)
        for (const auto& psi2 : pool) {
          if (phi == phi2 && psi == psi2) continue;
          const Implication first = first_up ? Implication{phi, phi2} : Implication{phi2, phi};
          for (const auto& a : cs)
            for (const auto& b : cs)
              out.push_back({{first, {psi, psi2}},
                             {op(a.names, b.names, phi, psi), op(a.names, b.names, phi2, psi2), false}});
        }
  return out;
}

// The op-specific β/α axiom block, numbered 1..6.
inline std::vector<Scheme> effectivity_block(const std::string& prefix, OpFn op) {
  std::vector<Scheme> out;
  const std::string o = prefix == "Ob" ? "Ob" : "Oa";
  out.push_back({prefix + "1", o + "(A,B)(φ,ψ) -> " + o + "(A,B∪C)(φ,ψ)", true,
                 [op](const InstanceContext& c) { return coalition_shift(c, op, op, grow_b); }});
  out.push_back({prefix + "2", o + "(A,∅)(φ,φ)", true, [op](const InstanceContext& c) {
                   return per_ab(c, [&](const CoalitionNames& a, const CoalitionNames&, const Formula& phi, const Formula&) {
                     return Instance{{}, {top(), op(a.names, {}, phi, phi), false}};
                   });
                 }});
  out.push_back({prefix + "3", o + "(A,∅)(⊥,ψ)", true, [op](const InstanceContext& c) {
                   return per_ab(c, [&](const CoalitionNames& a, const CoalitionNames&, const Formula&, const Formula& psi) {
                     return Instance{{}, {top(), op(a.names, {}, bottom(), psi), false}};
                   });
                 }});
  out.push_back({prefix + "4", o + "(∅,A)(⊤,φ) -> ¬" + o + "(A,B)(φ,⊥)", true, [op](const InstanceContext& c) {
                   return per_ab(c, [&](const CoalitionNames& a, const CoalitionNames& b, const Formula& phi, const Formula&) {
                     return Instance{{}, {op({}, a.names, top(), phi), neg(op(a.names, b.names, phi, bottom())), false}};
                   });
                 }});
  out.push_back({prefix + "5", o + "(A,B)(φ,ψ) <-> " + o + "(A,B\\A)(φ,ψ)", true, [op](const InstanceContext& c) {
                   return per_ab(c, [&](const CoalitionNames& a, const CoalitionNames& b, const Formula& phi, const Formula& psi) {
                     return Instance{
                         {}, {op(a.names, b.names, phi, psi), op(a.names, names_of(c.agents, b.mask - a.mask), phi, psi), true}};
                   });
                 }});
  out.push_back({prefix + "6", o + "(A,B)(φ,ψ) <-> " + o + "(A,B)(φ,φ∧ψ)", true, [op](const InstanceContext& c) {
                   return per_ab(c, [&](const CoalitionNames& a, const CoalitionNames& b, const Formula& phi, const Formula& psi) {
                     return Instance{{}, {op(a.names, b.names, phi, psi), op(a.names, b.names, phi, conj(phi, psi)), true}};
                   });
                 }});
  return out;
}

} // namespace detail

/// Every scheme the suite knows, valid ones first.
inline const std::vector<Scheme>& scheme_registry() {
  static const std::vector<Scheme> registry = [] {
    using namespace detail;
    using CN = CoalitionNames;
    std::vector<Scheme> r;
    r.push_back({"Oc1", "Oc(A,B)(φ,ψ) -> Oc(A∪C,B)(φ,ψ)", true,
                 [](const InstanceContext& c) { return coalition_shift(c, oc, oc, grow_a); }});
    r.push_back({"Oc2", "Oc(A,B)(φ,ψ) -> Oc(A,B∪C)(φ,ψ)", true,
                 [](const InstanceContext& c) { return coalition_shift(c, oc, oc, grow_b); }});
    r.push_back({"Oc3", "Oc(A,B)(φ,ψ) -> Oc(A∪B,∅)(φ∧ψ,⊤)", true, [](const InstanceContext& c) {
                   return per_ab(c, [&](const CN& a, const CN& b, const Formula& phi, const Formula& psi) {
                     return Instance{
                         {}, {oc(a.names, b.names, phi, psi), oc(names_of(c.agents, a.mask | b.mask), {}, conj(phi, psi), top()), false}};
                   });
                 }});
    r.push_back({"Oc4", "Oc(A,∅)(φ,ψ) <-> Oc(A,∅)(φ∧ψ,⊤)", true, [](const InstanceContext& c) {
                   return per_ab(c, [&](const CN& a, const CN&, const Formula& phi, const Formula& psi) {
                     return Instance{{}, {oc(a.names, {}, phi, psi), oc(a.names, {}, conj(phi, psi), top()), true}};
                   });
                 }});
    r.push_back({"Oc5", "¬Oc(A,B)(⊥,ψ)", true, [](const InstanceContext& c) {
                   return per_ab(c, [&](const CN& a, const CN& b, const Formula&, const Formula& psi) {
                     return Instance{{}, {oc(a.names, b.names, bottom(), psi), bottom(), false}};
                   });
                 }});
    r.push_back({"Oc6", "Oc(A,B)(φ,ψ) <-> Oc(A,B\\A)(φ,ψ)", true, [](const InstanceContext& c) {
                   return per_ab(c, [&](const CN& a, const CN& b, const Formula& phi, const Formula& psi) {
                     return Instance{
                         {}, {oc(a.names, b.names, phi, psi), oc(a.names, names_of(c.agents, b.mask - a.mask), phi, psi), true}};
                   });
                 }});
    r.push_back({"Oc7", "Oc(A,B)(φ,ψ) <-> Oc(A,B)(φ,φ∧ψ)", true, [](const InstanceContext& c) {
                   return per_ab(c, [&](const CN& a, const CN& b, const Formula& phi, const Formula& psi) {
                     return Instance{{}, {oc(a.names, b.names, phi, psi), oc(a.names, b.names, phi, conj(phi, psi)), true}};
                   });
                 }});
    for (auto& s : effectivity_block("Ob", obeta)) r.push_back(std::move(s));
    for (auto& s : effectivity_block("Oa", oalpha)) r.push_back(std::move(s));
    r.push_back({"OaStar", "Oa(A∪C,B)(φ,ψ) -> Oa(A,B)(φ,ψ)", true, [](const InstanceContext& c) {
                   // Same pairs as Oc1, read from the larger coalition down.
                   std::vector<Instance> out = coalition_shift(c, oalpha, oalpha, grow_a);
                   for (auto& i : out) std::swap(i.conclusion.lhs, i.conclusion.rhs);
                   return out;
                 }});
    r.push_back({"ConStR1", "Oa(A,B)(φ,ψ) -> Ob(A,B)(φ,ψ)", true, [](const InstanceContext& c) {
                   return per_ab(c, [&](const CN& a, const CN& b, const Formula& phi, const Formula& psi) {
                     return Instance{{}, {oalpha(a.names, b.names, phi, psi), obeta(a.names, b.names, phi, psi), false}};
                   });
                 }});
    r.push_back({"ConStR2", "Ob(∅,A)(⊤,φ) ∧ Ob(A,B)(φ,ψ) -> Oc(A,B)(φ,ψ)", true, [](const InstanceContext& c) {
                   return per_ab(c, [&](const CN& a, const CN& b, const Formula& phi, const Formula& psi) {
                     return Instance{{},
                                     {conj(obeta({}, a.names, top(), phi), obeta(a.names, b.names, phi, psi)),
                                      oc(a.names, b.names, phi, psi), false}};
                   });
                 }});
    r.push_back({"RuleOcMon", "from φ -> φ' and ψ -> ψ' infer Oc(A,B)(φ,ψ) -> Oc(A,B)(φ',ψ')", true,
                 [](const InstanceContext& c) { return mono_rule(c, oc, true); }});
    r.push_back({"RuleObMon", "from φ' -> φ and ψ -> ψ' infer Ob(A,B)(φ,ψ) -> Ob(A,B)(φ',ψ')", true,
                 [](const InstanceContext& c) { return mono_rule(c, obeta, false); }});
    r.push_back({"RuleOaMon", "from φ' -> φ and ψ -> ψ' infer Oa(A,B)(φ,ψ) -> Oa(A,B)(φ',ψ')", true,
                 [](const InstanceContext& c) { return mono_rule(c, oalpha, false); }});
    r.push_back({"ObAntiMon", "Ob(A∪C,B)(φ,ψ) -> Ob(A,B)(φ,ψ)", false, [](const InstanceContext& c) {
                   std::vector<Instance> out = coalition_shift(c, obeta, obeta, grow_a);
                   for (auto& i : out) std::swap(i.conclusion.lhs, i.conclusion.rhs);
                   return out;
                 }});
    return r;
  }();
  return registry;
}

/// The documented valid schemes and the documented invalid ones.
inline const std::vector<std::string>& documented_valid_schemes() {
  static const std::vector<std::string> ids{"Oc1", "Oc2", "Oc3", "Oc4", "Oc5", "Oc6", "Oc7", "Ob1", "Ob2",
                                            "Ob3", "Ob4", "Ob5", "Ob6", "Oa1", "Oa2", "Oa3", "Oa4", "Oa5",
                                            "Oa6", "OaStar", "ConStR1", "ConStR2", "RuleOcMon", "RuleObMon",
                                            "RuleOaMon"};
  return ids;
}

inline const std::vector<std::string>& documented_invalid_schemes() {
  static const std::vector<std::string> ids{"ObAntiMon"};
  return ids;
}

/// Differences between the registry and the documented tag lists; empty
/// when they agree exactly, with each tag registered once.
inline std::vector<std::string> registry_problems() {
  std::vector<std::string> problems;
  std::map<std::string, int> seen;
  for (const auto& s : scheme_registry()) ++seen[s.id];
  auto expect = [&](const std::vector<std::string>& ids, bool valid) {
    for (const auto& id : ids) {
      auto it = std::find_if(scheme_registry().begin(), scheme_registry().end(), [&](const Scheme& s) { return s.id == id; });
      if (it == scheme_registry().end())
        problems.push_back("scheme " + id + " is not registered");
      else if (it->expected_valid != valid)
        problems.push_back("scheme " + id + " has the wrong validity expectation");
    }
  };
  expect(documented_valid_schemes(), true);
  expect(documented_invalid_schemes(), false);
  for (const auto& [id, n] : seen) {
    if (n > 1) problems.push_back("scheme " + id + " is registered " + std::to_string(n) + " times");
    const bool documented =
        std::count(documented_valid_schemes().begin(), documented_valid_schemes().end(), id) +
            std::count(documented_invalid_schemes().begin(), documented_invalid_schemes().end(), id) > 0;
    if (!documented) problems.push_back("scheme " + id + " is registered but not documented");
  }
  return problems;
}

inline const Scheme& find_scheme(const std::string& id) {
  for (const auto& s : scheme_registry())
    if (s.id == id) return s;
  throw InputError("unknown scheme '" + id + "'");
}

/// Default metavariable values: atoms for axioms, a small Boolean pool for
/// rules. Stress mode adds depth-1 Boolean compounds and constants.
inline InstanceContext default_context(std::vector<std::string> agents, bool stress = false) {
  const Formula p = atom("p"), q = atom("q");
  InstanceContext c{std::move(agents), {p, q}, {p, q, conj(p, q), disj(p, q)}};
  if (stress) {
    c.formulas = {p, q, neg(p), neg(q), conj(p, q), disj(p, q), implies(p, q), top(), bottom()};
    c.rule_formulas = {p, q, neg(p), conj(p, q), disj(p, q), implies(p, q), top(), bottom()};
  }
  return c;
}

/// A falsified instance. Re-checkable with verify_counterexample().
struct Counterexample {
  std::string scheme;
  std::string source;  // which family produced the model
  GameModel model;
  StateId state = kNoState;
  Instance instance;
};

struct SchemeVerdict {
  std::string id;
  bool expected_valid = true;
  std::size_t models_tried = 0;
  std::size_t instances = 0;
  std::optional<Counterexample> counterexample;

  /// Valid schemes pass with no counterexample, invalid ones by finding one.
  bool passed() const { return expected_valid != counterexample.has_value(); }
};

/// True when the counterexample really falsifies its instance: premises hold
/// everywhere and the conclusion fails at the recorded state.
inline bool verify_counterexample(const Counterexample& cx) {
  ModelChecker mc(cx.model);
  for (const auto& p : cx.instance.premises)
    if (mc.extension(p.formula()) != cx.model.all_states()) return false;
  return !mc.holds(cx.state, cx.instance.conclusion.formula());
}

/// Hash-consed formula DAG, evaluated bottom-up once per model. Built for one
/// agent list; every model it runs on must declare exactly those agents.
class FormulaProgram {
public:
  explicit FormulaProgram(std::vector<std::string> agents) : agents_(std::move(agents)) {}

  const std::vector<std::string>& agents() const { return agents_; }
  std::size_t size() const { return nodes_.size(); }

  std::size_t add(const Formula& f) {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    Node n{f.op(), {}, {}, {}, 0, 0};
    switch (f.op()) {
    case Op::Atom: n.atom = f.atom_name(); break;
    case Op::Top: break;
    case Op::Not: n.lhs = add(f.lhs()); break;
    default:
      n.lhs = add(f.lhs());
      n.rhs = add(f.rhs());
      if (is_strategic(f.op())) {
        n.a = mask_of(f.coalition_a());
        n.b = mask_of(f.coalition_b());
      }
    }
    nodes_.push_back(std::move(n));
    ids_.emplace(f, nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  /// Extensions of every node, indexed by node id.
  std::vector<StateSet> run(const GameModel& m) const {
    if (m.agents() != agents_) throw InputError("model agents do not match the compiled program");
    ModelChecker mc(m);
    std::vector<StateSet> v;
    v.reserve(nodes_.size());
    for (const auto& n : nodes_) {
      switch (n.op) {
      case Op::Atom: v.push_back(m.valuation(n.atom)); break;
      case Op::Top: v.push_back(m.all_states()); break;
      case Op::Not: v.push_back(v[n.lhs].complement()); break;
      case Op::And: v.push_back(v[n.lhs] & v[n.rhs]); break;
      default: v.push_back(mc.eval_op(n.op, n.a, n.b, v[n.lhs], v[n.rhs]));
      }
    }
    return v;
  }

private:
  struct Node {
    Op op;
    std::string atom;
    Coalition a, b;
    std::size_t lhs, rhs;
  };

  Coalition mask_of(const AgentSet& names) const {
    Coalition c;
    for (const auto& n : names) {
      auto it = std::find(agents_.begin(), agents_.end(), n);
      if (it == agents_.end()) throw InputError("unknown agent '" + n + "' in scheme instance");
      c = c | Coalition::single(static_cast<AgentIndex>(it - agents_.begin()));
    }
    return c;
  }

  std::vector<std::string> agents_;
  std::vector<Node> nodes_;
  std::unordered_map<Formula, std::size_t, FormulaHash> ids_;
};

/// A model with a label saying where it came from.
struct SourcedModel {
  std::string source;
  GameModel model;
};

/// Instances of a set of schemes for one agent list, compiled together.
class SchemeBattery {
public:
  SchemeBattery(const std::vector<const Scheme*>& schemes, const InstanceContext& ctx) : program_(ctx.agents) {
    for (const Scheme* s : schemes) {
      Compiled c{s, s->instantiate(ctx), {}};
      for (const auto& inst : c.instances) {
        CompiledInstance ci;
        for (const auto& p : inst.premises) ci.premises.push_back(compile(p));
        ci.conclusion = compile(inst.conclusion);
        c.compiled.push_back(std::move(ci));
      }
      batteries_.push_back(std::move(c));
    }
  }

  std::size_t scheme_count() const { return batteries_.size(); }
  const Scheme& scheme(std::size_t i) const { return *batteries_[i].scheme; }
  std::size_t instance_count(std::size_t i) const { return batteries_[i].instances.size(); }

  /// Evaluates every scheme flagged in `active` on `m`; returns, per scheme,
  /// the first falsified (instance, state) if any.
  std::vector<std::optional<std::pair<std::size_t, StateId>>> run(const GameModel& m,
                                                                  const std::vector<bool>& active) const {
    const auto v = program_.run(m);
    const StateSet all = m.all_states();
    std::vector<std::optional<std::pair<std::size_t, StateId>>> out(batteries_.size());
    for (std::size_t i = 0; i < batteries_.size(); ++i) {
      if (!active[i]) continue;
      const auto& ci = batteries_[i].compiled;
      const std::vector<CompiledImplication>* last = nullptr;
      bool premises = true;
      for (std::size_t k = 0; k < ci.size() && !out[i]; ++k) {
        if (!last || *last != ci[k].premises) {
          premises = true;
          for (const auto& p : ci[k].premises) premises = premises && holds_everywhere(v, p);
          last = &ci[k].premises;
        }
        if (!premises || holds_everywhere(v, ci[k].conclusion)) continue;
        out[i] = std::make_pair(k, failures(v, ci[k].conclusion).first());
      }
    }
    return out;
  }

  const Instance& instance(std::size_t scheme, std::size_t k) const { return batteries_[scheme].instances[k]; }

private:
  struct CompiledImplication {
    std::size_t lhs, rhs;
    bool both_ways;
    friend bool operator==(const CompiledImplication&, const CompiledImplication&) = default;
  };
  struct CompiledInstance {
    std::vector<CompiledImplication> premises;
    CompiledImplication conclusion{};
  };
  struct Compiled {
    const Scheme* scheme;
    std::vector<Instance> instances;
    std::vector<CompiledInstance> compiled;
  };

  CompiledImplication compile(const Implication& i) { return {program_.add(i.lhs), program_.add(i.rhs), i.both_ways}; }

  static bool holds_everywhere(const std::vector<StateSet>& v, const CompiledImplication& i) {
    return v[i.lhs].is_subset_of(v[i.rhs]) && (!i.both_ways || v[i.rhs].is_subset_of(v[i.lhs]));
  }

  static StateSet failures(const std::vector<StateSet>& v, const CompiledImplication& i) {
    StateSet bad = v[i.lhs] - v[i.rhs];
    if (i.both_ways) bad |= v[i.rhs] - v[i.lhs];
    return bad;
  }

  FormulaProgram program_;
  std::vector<Compiled> batteries_;
};

/// Exhaustive family: every shape with 1..max_states states and
/// 1..max_actions actions (uniform per model) for the given agent count.
struct ExhaustiveFamily {
  std::size_t agents = 2;
  std::size_t max_states = 2;
  std::size_t max_actions = 2;
  std::vector<std::string> atoms{"p", "q"};
  std::uint64_t cap = 1'000'000;
};

inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct SuiteConfig {
  std::vector<std::string> include;  // empty = every registered scheme
  std::vector<std::string> exclude;
  std::optional<ExhaustiveFamily> exhaustive = ExhaustiveFamily{};
  std::size_t random_models = 10'000;  // per seed
  RandomFamily random;
  std::vector<std::uint64_t> seeds{kDefaultSeed};
  /// Upper bound on models examined per scheme, over all families.
  std::optional<std::size_t> budget;
  bool stress = false;
};

struct SuiteReport {
  std::vector<SchemeVerdict> verdicts;
  std::size_t models = 0;

  bool ok() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const SchemeVerdict& v) { return v.passed(); });
  }
};

inline std::vector<const Scheme*> select_schemes(const SuiteConfig& cfg) {
  if (auto p = registry_problems(); !p.empty()) throw InputError("scheme registry out of sync: " + p.front());
  std::vector<const Scheme*> out;
  for (const auto& id : cfg.include) (void)find_scheme(id);
  for (const auto& id : cfg.exclude) (void)find_scheme(id);
  for (const auto& s : scheme_registry()) {
    const bool wanted = cfg.include.empty() || std::count(cfg.include.begin(), cfg.include.end(), s.id) > 0;
    const bool dropped = std::count(cfg.exclude.begin(), cfg.exclude.end(), s.id) > 0;
    if (wanted && !dropped) out.push_back(&s);
  }
  return out;
}

/// Runs the selected schemes over `fixed` models, then the exhaustive family,
/// then the random family. Each scheme stops at its first counterexample or
/// when its budget is spent; models are visited in a fixed order, so the
/// report is reproducible.
inline SuiteReport run_suite(const SuiteConfig& cfg, const std::vector<SourcedModel>& fixed = {}) {
  const auto schemes = select_schemes(cfg);
  SuiteReport report;
  for (const Scheme* s : schemes) report.verdicts.push_back({s->id, s->expected_valid, 0, 0, std::nullopt});

  std::map<std::vector<std::string>, SchemeBattery> batteries;
  auto battery_for = [&](const std::vector<std::string>& agents) -> const SchemeBattery& {
    auto it = batteries.find(agents);
    if (it == batteries.end()) it = batteries.emplace(agents, SchemeBattery(schemes, default_context(agents, cfg.stress))).first;
    return it->second;
  };

  auto open = [&](std::size_t i) {
    const auto& v = report.verdicts[i];
    return !v.counterexample && (!cfg.budget || v.models_tried < *cfg.budget);
  };
  auto any_open = [&] {
    for (std::size_t i = 0; i < schemes.size(); ++i)
      if (open(i)) return true;
    return false;
  };

  auto visit = [&](const std::string& source, const GameModel& m) {
    std::vector<bool> active(schemes.size());
    bool any = false;
    for (std::size_t i = 0; i < schemes.size(); ++i) any = (active[i] = open(i)) || any;
    if (!any) return;
    const SchemeBattery& b = battery_for(m.agents());
    ++report.models;
    const auto hits = b.run(m, active);
    for (std::size_t i = 0; i < schemes.size(); ++i) {
      if (!active[i]) continue;
      auto& v = report.verdicts[i];
      ++v.models_tried;
      v.instances += b.instance_count(i);
      if (hits[i]) v.counterexample = Counterexample{schemes[i]->id, source, m, hits[i]->second, b.instance(i, hits[i]->first)};
    }
  };

  for (const auto& f : fixed) {
    if (!any_open()) break;
    visit(f.source, f.model);
  }
  if (cfg.exhaustive) {
    const auto& e = *cfg.exhaustive;
    for (std::size_t states = 1; states <= e.max_states && any_open(); ++states)
      for (std::size_t actions = 1; actions <= e.max_actions && any_open(); ++actions) {
        ModelEnumerator en(GeneratorBounds{e.agents, states, actions, e.atoms}, e.cap);
        const std::string source = "exhaustive " + std::to_string(e.agents) + " agents, " + std::to_string(states) +
                                   " states, " + std::to_string(actions) + " actions";
        GameModel m;
        while (any_open() && en.next(m)) visit(source, m);
      }
  }
  for (std::uint64_t seed : cfg.seeds)
    for (std::size_t i = 0; i < cfg.random_models && any_open(); ++i)
      visit("random seed " + std::to_string(seed) + " #" + std::to_string(i), random_model(cfg.random, derive_seed(seed, i)));
  return report;
}

} // namespace constr

#endif // CONSTR_SCHEMES_HPP
