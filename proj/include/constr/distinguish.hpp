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

#ifndef CONSTR_DISTINGUISH_HPP
#define CONSTR_DISTINGUISH_HPP

#include <cstddef>
#include <optional>
#include <unordered_set>
#include <vector>

#include "formula.hpp"
#include "game_model.hpp"
#include "semantics.hpp"

namespace constr {

struct DistinguishOptions {
  /// Above this many blocks the refinement only tries outcome-closure
  /// arguments instead of every union of blocks, and may stop early.
  std::size_t exhaustive_block_limit = 7;
};

// Partition refinement over formula definability. Blocks start as atom
// classes. A block is split whenever some op(A,B)(X,Y), with X and Y unions of
// current blocks, holds at part of it. Each split records the formula that
// caused it, so every block has a characteristic formula built from the
// recorded ones. When no union of blocks splits anything, the blocks are
// exactly the classes of logical equivalence, because every formula extension
// is then a union of blocks by induction on formulas.
class Distinguisher {
public:
  explicit Distinguisher(const GameModel& m, DistinguishOptions opts = {})
      : model_(&m), checker_(m), opts_(opts), block_of_(m.state_count(), 0) {
    blocks_.push_back(m.all_states());
    for (const auto& p : m.atoms()) refine(atom(p), m.valuation(p));
    while (auto s = find_split()) refine(s->first, s->second);
  }

  const GameModel& model() const { return *model_; }
  const std::vector<StateSet>& blocks() const { return blocks_; }
  const std::vector<Extension>& splitters() const { return splitters_; }

  /// False when the final stability check was limited to closure arguments,
  /// so blocks may still contain logically inequivalent states.
  bool exhaustive() const { return exhaustive_; }

  bool equivalent(StateId s, StateId t) const { return block_of_.at(s) == block_of_.at(t); }

  /// A formula true at s and false at t, or nothing when no formula tells
  /// them apart.
  std::optional<Formula> distinguish(StateId s, StateId t) const {
    model_->check_state(s);
    model_->check_state(t);
    for (const auto& e : splitters_)
      if (e.states.contains(s) != e.states.contains(t)) return e.states.contains(s) ? e.formula : neg(e.formula);
    return std::nullopt;
  }

  /// Characteristic formula of the block containing s.
  Formula characteristic(StateId s) const { return chi(block_of_.at(s)); }

private:
  struct Candidate {
    Op op;
    Coalition a, b;
  };

  void refine(const Formula& f, const StateSet& ext) {
    bool split = false;
    const std::size_t k = blocks_.size();
    for (std::size_t i = 0; i < k; ++i) {
      StateSet in = blocks_[i] & ext;
      if (in.empty() || in == blocks_[i]) continue;
      blocks_[i] -= in;
      in.for_each([&](StateId s) { block_of_[s] = blocks_.size(); });
      blocks_.push_back(std::move(in));
      split = true;
    }
    if (split) splitters_.push_back({f, ext});
  }

  bool splits(const StateSet& ext) const {
    for (const auto& b : blocks_) {
      if (b.count() < 2) continue;
      const bool first = ext.contains(b.first());
      bool differ = false;
      b.for_each([&](StateId s) { differ = differ || ext.contains(s) != first; });
      if (differ) return true;
    }
    return false;
  }

  // Evaluates only where a difference could split a block.
  StateSet eval_active(Op op, Coalition a, Coalition b, const StateSet& x, const StateSet& y) const {
    StateSet out(model_->state_count());
    for (const auto& blk : blocks_)
      if (blk.count() >= 2)
        blk.for_each([&](StateId s) {
          if (checker_.eval_at(s, op, a, b, x, y)) out.insert(s);
        });
    return out;
  }

  StateSet closure(const StateSet& xs) const {
    StateSet out(model_->state_count());
    xs.for_each([&](StateId s) { out |= blocks_[block_of_[s]]; });
    return out;
  }

  std::optional<std::pair<Formula, StateSet>> find_split() {
    bool any_big = false;
    for (const auto& b : blocks_) any_big = any_big || b.count() >= 2;
    if (!any_big) {
      exhaustive_ = true;
      return std::nullopt;
    }
    const std::size_t agents = model_->agent_count();
    std::vector<Candidate> ops;
    for (Op op : {Op::Oc, Op::Oalpha, Op::Obeta})
      for (Coalition a : all_coalitions(agents))
        for (Coalition b : all_coalitions(agents))
          if ((a & b).is_empty()) ops.push_back({op, a, b});

    // Closures of outcome sets and their complements come first: they are
    // few and usually enough.
    std::unordered_set<StateSet, StateSetHash> seen;
    std::vector<StateSet> args;
    auto add = [&](StateSet s) {
      if (seen.insert(s).second) args.push_back(std::move(s));
    };
    add(StateSet(model_->state_count()));
    add(model_->all_states());
    for (StateId s = 0; s < model_->state_count(); ++s)
      for (Coalition c : all_coalitions(agents))
        for (const auto& out : checker_.index().outs(s, c)) {
          StateSet cl = closure(out);
          add(cl.complement());
          add(std::move(cl));
        }
    if (auto hit = scan(ops, args)) return hit;

    if (blocks_.size() > opts_.exhaustive_block_limit) {
      exhaustive_ = false;
      return std::nullopt;
    }
    std::vector<StateSet> unions;
    for (std::size_t mask = 0; mask < (std::size_t{1} << blocks_.size()); ++mask) {
      StateSet u(model_->state_count());
      for (std::size_t i = 0; i < blocks_.size(); ++i)
        if ((mask >> i) & 1U) u |= blocks_[i];
      if (!seen.count(u)) unions.push_back(std::move(u));
    }
    // New pairs only: at least one side outside the closure arguments.
    for (const auto& c : ops) {
      for (const auto& x : unions) {
        for (const auto& y : args)
          if (auto hit = try_one(c, x, y)) return hit;
        for (const auto& y : unions)
          if (auto hit = try_one(c, x, y)) return hit;
      }
      for (const auto& x : args)
        for (const auto& y : unions)
          if (auto hit = try_one(c, x, y)) return hit;
    }
    exhaustive_ = true;
    return std::nullopt;
  }

  std::optional<std::pair<Formula, StateSet>> scan(const std::vector<Candidate>& ops,
                                                   const std::vector<StateSet>& args) const {
    for (const auto& c : ops)
      for (const auto& x : args)
        for (const auto& y : args)
          if (auto hit = try_one(c, x, y)) return hit;
    return std::nullopt;
  }

  std::optional<std::pair<Formula, StateSet>> try_one(const Candidate& c, const StateSet& x, const StateSet& y) const {
    if (!splits(eval_active(c.op, c.a, c.b, x, y))) return std::nullopt;
    const AgentSet an(model_->agent_names(c.a));
    const AgentSet bn(model_->agent_names(c.b));
    Formula f = strategic(c.op, an, bn, union_formula(x), union_formula(y));
    return std::make_pair(std::move(f), checker_.eval_op(c.op, c.a, c.b, x, y));
  }

  // Conjunction of splitter literals pinning down block i, with literals
  // dropped greedily while the extension stays exact.
  Formula chi(std::size_t i) const {
    const StateSet& blk = blocks_[i];
    const StateId rep = blk.first();
    std::vector<bool> keep(splitters_.size(), true);
    auto extent = [&] {
      StateSet acc = model_->all_states();
      for (std::size_t j = 0; j < splitters_.size(); ++j) {
        if (!keep[j]) continue;
        const auto& e = splitters_[j].states;
        acc &= e.contains(rep) ? e : e.complement();
      }
      return acc;
    };
    for (std::size_t j = 0; j < splitters_.size(); ++j) {
      keep[j] = false;
      if (extent() != blk) keep[j] = true;
    }
    std::optional<Formula> f;
    for (std::size_t j = 0; j < splitters_.size(); ++j) {
      if (!keep[j]) continue;
      const auto& e = splitters_[j];
      Formula lit = e.states.contains(rep) ? e.formula : neg(e.formula);
      f = f ? conj(*f, lit) : lit;
    }
    return f ? *f : top();
  }

  // A formula whose extension is the union of blocks u.
  Formula union_formula(const StateSet& u) const {
    if (u.empty()) return bottom();
    if (u == model_->all_states()) return top();
    for (const auto& e : splitters_) {
      if (e.states == u) return e.formula;
      if (e.states.complement() == u) return neg(e.formula);
    }
    std::vector<std::size_t> in, out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) (u.contains(blocks_[i].first()) ? in : out).push_back(i);
    const bool negate = out.size() < in.size();
    std::optional<Formula> f;
    for (std::size_t i : negate ? out : in) f = f ? disj(*f, chi(i)) : chi(i);
    return negate ? neg(*f) : *f;
  }

  const GameModel* model_;
  ModelChecker checker_;
  DistinguishOptions opts_;
  std::vector<StateSet> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<Extension> splitters_;
  bool exhaustive_ = false;
};

inline std::optional<Formula> distinguishing_formula(const GameModel& m, StateId s, StateId t) {
  return Distinguisher(m).distinguish(s, t);
}

} // namespace constr

#endif // CONSTR_DISTINGUISH_HPP
