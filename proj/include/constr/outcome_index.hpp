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

#ifndef CONSTR_OUTCOME_INDEX_HPP
#define CONSTR_OUTCOME_INDEX_HPP

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "game_model.hpp"

namespace constr {

/// Dense Out-set tables for a validated model.
///
/// A joint action of coalition C at state s is addressed by its index: the
/// mixed-radix number formed by the members' action indices in agent order,
/// last member fastest. For the grand coalition this coincides with the
/// profile index of GameModel.
///
/// Tables are built lazily per (state, coalition). The cache is not
/// synchronized; give each thread its own index.
class OutcomeIndex {
public:
  explicit OutcomeIndex(const GameModel& m) : model_(&m) { require_valid(m); }

  const GameModel& model() const { return *model_; }

  std::size_t joint_count(StateId s, Coalition c) const {
    std::size_t n = 1;
    for (auto a : c.members()) n *= model_->action_count(s, a);
    return n;
  }

  /// Out[s, sigma] for every joint action sigma of `c` at `s`, by index.
  const std::vector<StateSet>& outs(StateId s, Coalition c) const { return table(s, c).outs; }

  /// Index, among joint actions of A ∪ B, of (joint ja of A) ⊎ (joint jb of B).
  std::size_t merge(StateId s, Coalition a, std::size_t ja, Coalition b, std::size_t jb) const {
    const auto& ta = table(s, a);
    const auto& tb = table(s, b);
    const auto& tu = table(s, a | b);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < tu.members.size(); ++k) {
      const AgentIndex agent = tu.members[k];
      const std::size_t digit =
          a.contains(agent) ? ta.digits[ja * ta.members.size() + position(ta, agent)]
                            : tb.digits[jb * tb.members.size() + position(tb, agent)];
      idx = idx * tu.radix[k] + digit;
    }
    return idx;
  }

  /// merge() for every pair, flattened as [ja * joint_count(s, b) + jb].
  const std::vector<std::size_t>& merge_table(StateId s, Coalition a, Coalition b) const {
    const Key key{s, a.mask(), b.mask()};
    auto it = merge_cache_.find(key);
    if (it != merge_cache_.end()) return it->second;
    const std::size_t na = joint_count(s, a);
    const std::size_t nb = joint_count(s, b);
    std::vector<std::size_t> flat(na * nb);
    for (std::size_t ja = 0; ja < na; ++ja)
      for (std::size_t jb = 0; jb < nb; ++jb) flat[ja * nb + jb] = merge(s, a, ja, b, jb);
    return merge_cache_.emplace(key, std::move(flat)).first->second;
  }

  /// Index of the restriction of joint action `j` of `c` to `sub` ⊆ `c`.
  std::size_t restrict(StateId s, Coalition c, std::size_t j, Coalition sub) const {
    const auto& tc = table(s, c);
    const auto& ts = table(s, sub);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < ts.members.size(); ++k)
      idx = idx * ts.radix[k] + tc.digits[j * tc.members.size() + position(tc, ts.members[k])];
    return idx;
  }

  JointAction joint_action(StateId s, Coalition c, std::size_t j) const {
    const auto& t = table(s, c);
    JointAction out{s, c, std::vector<std::size_t>(model_->agent_count(), kNoAction)};
    for (std::size_t k = 0; k < t.members.size(); ++k) out.actions[t.members[k]] = t.digits[j * t.members.size() + k];
    return out;
  }

  std::size_t index_of(const JointAction& ja) const {
    check_available(*model_, ja.state, ja);
    const auto& t = table(ja.state, ja.coalition);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < t.members.size(); ++k) idx = idx * t.radix[k] + ja.actions[t.members[k]];
    return idx;
  }

private:
  struct Key {
    StateId s;
    std::uint32_t a;
    std::uint32_t b;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k.a) << 32) | k.b) ^ (k.s * 0x9e3779b97f4a7c15ULL);
    }
  };

  struct Table {
    std::vector<AgentIndex> members;
    std::vector<std::size_t> radix;
    std::vector<std::size_t> digits;  // [joint][member position]
    std::vector<StateSet> outs;
  };

  static std::size_t position(const Table& t, AgentIndex a) {
    for (std::size_t k = 0; k < t.members.size(); ++k)
      if (t.members[k] == a) return k;
    return 0;
  }

  const Table& table(StateId s, Coalition c) const {
    const std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | c.mask();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, build(s, c)).first->second;
  }

  Table build(StateId s, Coalition c) const {
    const GameModel& m = *model_;
    Table t;
    t.members = c.members();
    for (auto a : t.members) t.radix.push_back(m.action_count(s, a));
    const std::size_t count = joint_count(s, c);
    t.digits.resize(count * t.members.size());
    for (std::size_t j = 0; j < count; ++j) {
      std::size_t rest = j;
      for (std::size_t k = t.members.size(); k-- > 0;) {
        t.digits[j * t.members.size() + k] = rest % t.radix[k];
        rest /= t.radix[k];
      }
    }
    t.outs.assign(count, StateSet(m.state_count()));
    const std::size_t profiles = m.profile_count(s);
    for (std::size_t p = 0; p < profiles; ++p) {
      const auto profile = m.decode_profile(s, p);
      std::size_t j = 0;
      for (std::size_t k = 0; k < t.members.size(); ++k) j = j * t.radix[k] + profile[t.members[k]];
      t.outs[j].insert(m.outcome_at(s, p));
    }
    return t;
  }

  const GameModel* model_;
  mutable std::unordered_map<std::uint64_t, Table> cache_;
  mutable std::unordered_map<Key, std::vector<std::size_t>, KeyHash> merge_cache_;
};

} // namespace constr

#endif // CONSTR_OUTCOME_INDEX_HPP
