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

#ifndef CONSTR_SEMANTICS_HPP
#define CONSTR_SEMANTICS_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "formula_io.hpp"
#include "game_model.hpp"
#include "outcome_index.hpp"

namespace constr {

/// The set of states where a formula holds.
struct Extension {
  Formula formula;
  StateSet states;
};

/// Bottom-up evaluator with per-subformula memoization. Atoms the model
/// never mentions are false everywhere. Not thread-safe; use one per thread.
class ModelChecker {
public:
  explicit ModelChecker(const GameModel& m) : model_(&m), index_(m) {}

  const GameModel& model() const { return *model_; }
  const OutcomeIndex& index() const { return index_; }

  /// Resolves formula agent names; unknown names raise InputError.
  Coalition resolve(const AgentSet& names) const { return model_->coalition(names.names()); }

  const StateSet& extension(const Formula& f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    StateSet result = compute(f);
    return memo_.emplace(f, std::move(result)).first->second;
  }

  bool holds(StateId s, const Formula& f) {
    model_->check_state(s);
    return extension(f).contains(s);
  }

  /// States where op(A, B) holds given argument extensions X and Y.
  StateSet eval_op(Op op, Coalition a, Coalition b, const StateSet& x, const StateSet& y) const {
    StateSet out(model_->state_count());
    for (StateId s = 0; s < model_->state_count(); ++s)
      if (eval_at(s, op, a, b, x, y)) out.insert(s);
    return out;
  }

  bool eval_at(StateId s, Op op, Coalition a, Coalition b, const StateSet& x, const StateSet& y) const {
    const auto& outs_a = index_.outs(s, a);
    const auto& outs_u = index_.outs(s, a | b);
    const auto& merged = index_.merge_table(s, a, b);
    const std::size_t na = outs_a.size();
    const std::size_t nb = index_.joint_count(s, b);
    auto secures = [&](std::size_t ja, std::size_t jb) { return outs_u[merged[ja * nb + jb]].is_subset_of(y); };
    switch (op) {
    case Op::Oc:
      for (std::size_t ja = 0; ja < na; ++ja) {
        if (!outs_a[ja].is_subset_of(x)) continue;
        for (std::size_t jb = 0; jb < nb; ++jb)
          if (secures(ja, jb)) return true;
      }
      return false;
    case Op::Oalpha:
      for (std::size_t jb = 0; jb < nb; ++jb) {
        bool uniform = true;
        for (std::size_t ja = 0; ja < na && uniform; ++ja)
          if (outs_a[ja].is_subset_of(x) && !secures(ja, jb)) uniform = false;
        if (uniform) return true;
      }
      return false;
    case Op::Obeta:
      for (std::size_t ja = 0; ja < na; ++ja) {
        if (!outs_a[ja].is_subset_of(x)) continue;
        bool answered = false;
        for (std::size_t jb = 0; jb < nb && !answered; ++jb) answered = secures(ja, jb);
        if (!answered) return false;
      }
      return true;
    default: throw InputError("eval_op: not a strategic operator");
    }
  }

private:
  StateSet compute(const Formula& f) {
    const std::size_t n = model_->state_count();
    switch (f.op()) {
    case Op::Atom: return model_->valuation(f.atom_name());
    case Op::Top: return StateSet::full(n);
    case Op::Not: return extension(f.lhs()).complement();
    case Op::And: {
      StateSet l = extension(f.lhs());
      return l &= extension(f.rhs());
    }
    default: {
      const Coalition a = resolve(f.coalition_a());
      const Coalition b = resolve(f.coalition_b());
      const StateSet x = extension(f.lhs());
      const StateSet y = extension(f.rhs());
      return eval_op(f.op(), a, b, x, y);
    }
    }
  }

  const GameModel* model_;
  OutcomeIndex index_;
  std::unordered_map<Formula, StateSet, FormulaHash> memo_;
};

inline Extension extension(const GameModel& m, const Formula& f) {
  ModelChecker mc(m);
  return {f, mc.extension(f)};
}

inline bool holds(const GameModel& m, StateId s, const Formula& f) {
  ModelChecker mc(m);
  return mc.holds(s, f);
}

/// Evaluates the outermost strategic operator of `f` at `s` quantifying over
/// joint actions of B \ A instead of B. Must agree with holds().
inline bool holds_via_b_minus_a(const GameModel& m, StateId s, const Formula& f) {
  if (!is_strategic(f.op())) throw InputError("holds_via_b_minus_a: formula is not a strategic operator");
  ModelChecker mc(m);
  m.check_state(s);
  const Coalition a = mc.resolve(f.coalition_a());
  const Coalition d = mc.resolve(f.coalition_b()) - a;
  return mc.eval_at(s, f.op(), a, d, mc.extension(f.lhs()), mc.extension(f.rhs()));
}

/// Human-readable account of why the outermost strategic operator of `f`
/// holds or fails at `s`: witness joint actions or the counter-examples.
inline std::vector<std::string> explain(const GameModel& m, StateId s, const Formula& f) {
  std::vector<std::string> lines;
  if (!is_strategic(f.op())) {
    lines.push_back("no strategic operator at the top level");
    return lines;
  }
  ModelChecker mc(m);
  const auto& idx = mc.index();
  const Coalition a = mc.resolve(f.coalition_a());
  const Coalition b = mc.resolve(f.coalition_b());
  const StateSet& x = mc.extension(f.lhs());
  const StateSet& y = mc.extension(f.rhs());
  const auto& outs_a = idx.outs(s, a);
  const auto& outs_u = idx.outs(s, a | b);
  const auto& merged = idx.merge_table(s, a, b);
  const std::size_t na = outs_a.size();
  const std::size_t nb = idx.joint_count(s, b);
  auto ja_text = [&](std::size_t j) { return to_string(m, idx.joint_action(s, a, j)); };
  auto jb_text = [&](std::size_t j) { return to_string(m, idx.joint_action(s, b, j)); };
  auto secures = [&](std::size_t ja, std::size_t jb) { return outs_u[merged[ja * nb + jb]].is_subset_of(y); };
  const bool value = mc.eval_at(s, f.op(), a, b, x, y);

  switch (f.op()) {
  case Op::Oc:
    if (value) {
      for (std::size_t ja = 0; ja < na; ++ja) {
        if (!outs_a[ja].is_subset_of(x)) continue;
        for (std::size_t jb = 0; jb < nb; ++jb)
          if (secures(ja, jb)) {
            lines.push_back("witness A " + ja_text(ja) + " guarantees the first argument");
            lines.push_back("witness B " + jb_text(jb) + " then guarantees the second argument");
            return lines;
          }
      }
    }
    for (std::size_t ja = 0; ja < na; ++ja) {
      if (!outs_a[ja].is_subset_of(x))
        lines.push_back("A " + ja_text(ja) + " does not guarantee the first argument");
      else
        lines.push_back("A " + ja_text(ja) + " guarantees the first argument but no B action completes it");
    }
    return lines;
  case Op::Oalpha:
    for (std::size_t jb = 0; jb < nb; ++jb) {
      std::size_t counter = na;
      for (std::size_t ja = 0; ja < na && counter == na; ++ja)
        if (outs_a[ja].is_subset_of(x) && !secures(ja, jb)) counter = ja;
      if (value && counter == na) {
        lines.push_back("witness B " + jb_text(jb) + " secures the second argument against every qualifying A action");
        return lines;
      }
      if (!value) lines.push_back("B " + jb_text(jb) + " is defeated by A " + ja_text(counter));
    }
    return lines;
  case Op::Obeta:
    for (std::size_t ja = 0; ja < na; ++ja) {
      if (!outs_a[ja].is_subset_of(x)) continue;
      std::size_t answer = nb;
      for (std::size_t jb = 0; jb < nb && answer == nb; ++jb)
        if (secures(ja, jb)) answer = jb;
      if (answer == nb) {
        lines.clear();
        lines.push_back("A " + ja_text(ja) + " guarantees the first argument and no B response secures the second");
        return lines;
      }
      lines.push_back("A " + ja_text(ja) + " is answered by B " + jb_text(answer));
    }
    if (lines.empty()) lines.push_back("no A action guarantees the first argument (vacuously true)");
    return lines;
  default: return lines;
  }
}

} // namespace constr

#endif // CONSTR_SEMANTICS_HPP
