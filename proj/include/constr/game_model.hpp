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

#ifndef CONSTR_GAME_MODEL_HPP
#define CONSTR_GAME_MODEL_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "coalition.hpp"
#include "errors.hpp"
#include "state_set.hpp"

namespace constr {

inline constexpr std::size_t kNoAction = static_cast<std::size_t>(-1);

/// A finite concurrent game model: states, per-state per-agent action sets,
/// a local outcome function per state and an atomic valuation.
///
/// Action profiles at a state are tuples in agent declaration order. A
/// profile is addressed either by its per-agent action indices or by its
/// mixed-radix index (last agent varies fastest), which is also the order in
/// which profiles are rendered.
///
/// Outcomes start out undefined; totality is checked by validate_model(),
/// not here, so partial models can be built and diagnosed.
class GameModel {
public:
  GameModel() = default;

  GameModel(std::vector<std::string> agents, std::vector<std::string> states)
      : agents_(std::move(agents)), states_(std::move(states)) {
    if (agents_.size() > Coalition::kMaxAgents)
      throw InputError("at most " + std::to_string(Coalition::kMaxAgents) + " agents are supported");
    actions_.assign(states_.size(), std::vector<std::vector<std::string>>(agents_.size()));
    outcomes_.assign(states_.size(), {});
  }

  std::size_t agent_count() const { return agents_.size(); }
  std::size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& agent_name(AgentIndex a) const { return agents_.at(a); }
  const std::string& state_name(StateId s) const { return states_.at(s); }

  std::optional<StateId> find_state(const std::string& name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) return std::nullopt;
    return static_cast<StateId>(it - states_.begin());
  }

  std::optional<AgentIndex> find_agent(const std::string& name) const {
    auto it = std::find(agents_.begin(), agents_.end(), name);
    if (it == agents_.end()) return std::nullopt;
    return static_cast<AgentIndex>(it - agents_.begin());
  }

  StateId state(const std::string& name) const {
    if (auto s = find_state(name)) return *s;
    throw InputError("unknown state '" + name + "'");
  }

  AgentIndex agent(const std::string& name) const {
    if (auto a = find_agent(name)) return *a;
    throw InputError("unknown agent '" + name + "'");
  }

  template <typename Names>
  Coalition coalition(const Names& names) const {
    Coalition c;
    for (const auto& n : names) c = c | Coalition::single(agent(n));
    return c;
  }

  std::vector<std::string> agent_names(Coalition c) const {
    std::vector<std::string> out;
    for (auto a : c.members()) out.push_back(agents_.at(a));
    return out;
  }

  /// Replaces the actions of `agent` at `s`. Clears every outcome of `s`,
  /// because the profile space changes.
  void set_actions(StateId s, AgentIndex agent, std::vector<std::string> names) {
    check_state(s);
    check_agent(agent);
    actions_[s][agent] = std::move(names);
    outcomes_[s].assign(profile_count(s), kNoState);
  }

  const std::vector<std::string>& actions(StateId s, AgentIndex agent) const {
    check_state(s);
    check_agent(agent);
    return actions_[s][agent];
  }

  std::size_t action_count(StateId s, AgentIndex agent) const { return actions(s, agent).size(); }

  std::optional<std::size_t> find_action(StateId s, AgentIndex agent, const std::string& name) const {
    const auto& acts = actions(s, agent);
    auto it = std::find(acts.begin(), acts.end(), name);
    if (it == acts.end()) return std::nullopt;
    return static_cast<std::size_t>(it - acts.begin());
  }

  /// Size of the availability product at `s`; zero if some agent has no
  /// actions there.
  std::size_t profile_count(StateId s) const {
    check_state(s);
    std::size_t n = 1;
    for (const auto& acts : actions_[s]) n *= acts.size();
    return n;
  }

  std::size_t profile_index(StateId s, std::span<const std::size_t> profile) const {
    check_state(s);
    if (profile.size() != agents_.size()) throw InputError("profile length does not match the number of agents");
    std::size_t idx = 0;
    for (std::size_t a = 0; a < agents_.size(); ++a) {
      if (profile[a] >= actions_[s][a].size())
        throw InputError("action index out of range for agent '" + agents_[a] + "' at state '" + states_[s] + "'");
      idx = idx * actions_[s][a].size() + profile[a];
    }
    return idx;
  }

  std::vector<std::size_t> decode_profile(StateId s, std::size_t index) const {
    check_state(s);
    std::vector<std::size_t> profile(agents_.size(), 0);
    for (std::size_t a = agents_.size(); a-- > 0;) {
      const std::size_t n = actions_[s][a].size();
      profile[a] = index % n;
      index /= n;
    }
    return profile;
  }

  void set_outcome(StateId s, std::span<const std::size_t> profile, StateId target) {
    set_outcome_at(s, profile_index(s, profile), target);
  }

  void set_outcome_at(StateId s, std::size_t profile_index, StateId target) {
    check_state(s);
    if (target != kNoState) check_state(target);
    outcomes_.at(s).at(profile_index) = target;
  }

  /// Outcome of the profile with the given index, or kNoState if undefined.
  StateId outcome_at(StateId s, std::size_t profile_index) const {
    check_state(s);
    const auto& row = outcomes_[s];
    return profile_index < row.size() ? row[profile_index] : kNoState;
  }

  StateId outcome(StateId s, std::span<const std::size_t> profile) const {
    return outcome_at(s, profile_index(s, profile));
  }

  void add_label(StateId s, const std::string& atom) {
    check_state(s);
    auto it = valuation_.try_emplace(atom, StateSet(states_.size())).first;
    it->second.insert(s);
  }

  void remove_label(StateId s, const std::string& atom) {
    check_state(s);
    auto it = valuation_.find(atom);
    if (it == valuation_.end()) return;
    it->second.erase(s);
    if (it->second.empty()) valuation_.erase(it);
  }

  /// Atoms true somewhere, sorted.
  std::vector<std::string> atoms() const {
    std::vector<std::string> out;
    for (const auto& [atom, set] : valuation_) out.push_back(atom);
    return out;
  }

  /// V(atom); empty for atoms the model never mentions.
  StateSet valuation(const std::string& atom) const {
    auto it = valuation_.find(atom);
    return it == valuation_.end() ? StateSet(states_.size()) : it->second;
  }

  /// Atoms true at `s`, sorted.
  std::vector<std::string> labels(StateId s) const {
    check_state(s);
    std::vector<std::string> out;
    for (const auto& [atom, set] : valuation_)
      if (set.contains(s)) out.push_back(atom);
    return out;
  }

  StateSet all_states() const { return StateSet::full(states_.size()); }

  friend bool operator==(const GameModel&, const GameModel&) = default;

  /// Throws InputError for an out-of-range index.
  void check_state(StateId s) const {
    if (s >= states_.size()) throw InputError("state index " + std::to_string(s) + " out of range");
  }
  void check_agent(AgentIndex a) const {
    if (a >= agents_.size()) throw InputError("agent index " + std::to_string(a) + " out of range");
  }

private:

  std::vector<std::string> agents_;
  std::vector<std::string> states_;
  std::vector<std::vector<std::vector<std::string>>> actions_;  // [state][agent]
  std::vector<std::vector<StateId>> outcomes_;                  // [state][profile index]
  std::map<std::string, StateSet> valuation_;
};

/// A joint action of one coalition at one state. `actions` has one slot per
/// model agent; slots outside the coalition hold kNoAction.
struct JointAction {
  StateId state = kNoState;
  Coalition coalition;
  std::vector<std::size_t> actions;

  std::size_t action(AgentIndex a) const { return a < actions.size() ? actions[a] : kNoAction; }

  friend bool operator==(const JointAction&, const JointAction&) = default;
};

/// Builds a joint action from agent-name/action-name pairs.
inline JointAction make_joint_action(const GameModel& m, StateId s,
                                     const std::vector<std::pair<std::string, std::string>>& assignment) {
  JointAction ja{s, Coalition{}, std::vector<std::size_t>(m.agent_count(), kNoAction)};
  for (const auto& [agent_name, action_name] : assignment) {
    const AgentIndex a = m.agent(agent_name);
    auto act = m.find_action(s, a, action_name);
    if (!act)
      throw InputError("action '" + action_name + "' is not available to agent '" + agent_name + "' at state '" +
                       m.state_name(s) + "'");
    if (ja.coalition.contains(a)) throw InputError("agent '" + agent_name + "' assigned twice");
    ja.coalition = ja.coalition | Coalition::single(a);
    ja.actions[a] = *act;
  }
  return ja;
}

/// Renders as `{a:a1, b:b2}`; the empty joint action renders as `{}`.
inline std::string to_string(const GameModel& m, const JointAction& ja) {
  std::string out = "{";
  bool first = true;
  for (auto a : ja.coalition.members()) {
    if (!first) out += ", ";
    first = false;
    out += m.agent_name(a) + ":" + m.actions(ja.state, a).at(ja.actions.at(a));
  }
  return out + "}";
}

inline void check_available(const GameModel& m, StateId s, const JointAction& ja) {
  if (ja.state != s) throw InputError("joint action belongs to a different state");
  if (s >= m.state_count()) throw InputError("unknown state index");
  if (ja.actions.size() != m.agent_count()) throw InputError("joint action has the wrong number of agent slots");
  if (!ja.coalition.is_subset_of(Coalition::grand(m.agent_count())))
    throw InputError("joint action mentions agents outside the model");
  for (AgentIndex a = 0; a < m.agent_count(); ++a) {
    if (ja.coalition.contains(a)) {
      if (ja.actions[a] >= m.action_count(s, a))
        throw InputError("joint action is not available at state '" + m.state_name(s) + "'");
    } else if (ja.actions[a] != kNoAction) {
      throw InputError("joint action assigns an agent outside its coalition");
    }
  }
}

/// Every joint action of `c` at `s`: the Cartesian product of the members'
/// available actions, in lexicographic order. For the empty coalition this
/// is the single empty joint action.
inline std::vector<JointAction> joint_actions(const GameModel& m, Coalition c, StateId s) {
  if (s >= m.state_count()) throw InputError("unknown state index " + std::to_string(s));
  if (!c.is_subset_of(Coalition::grand(m.agent_count()))) throw InputError("coalition mentions unknown agents");
  const auto members = c.members();
  std::vector<JointAction> out;
  JointAction cur{s, c, std::vector<std::size_t>(m.agent_count(), kNoAction)};
  for (auto a : members) {
    if (m.action_count(s, a) == 0) return out;
    cur.actions[a] = 0;
  }
  while (true) {
    out.push_back(cur);
    std::size_t i = members.size();
    while (i > 0) {
      const AgentIndex a = members[i - 1];
      if (++cur.actions[a] < m.action_count(s, a)) break;
      cur.actions[a] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

/// sigma_a ⊎ sigma_b: the joint action of A ∪ B that agrees with sigma_a on A
/// and with sigma_b on B \ A.
inline JointAction merge(const JointAction& sigma_a, const JointAction& sigma_b) {
  if (sigma_a.state != sigma_b.state) throw InputError("cannot merge joint actions of different states");
  if (sigma_a.actions.size() != sigma_b.actions.size()) throw InputError("cannot merge joint actions of different models");
  JointAction out{sigma_a.state, sigma_a.coalition | sigma_b.coalition, sigma_a.actions};
  for (auto a : (sigma_b.coalition - sigma_a.coalition).members()) out.actions[a] = sigma_b.actions[a];
  return out;
}

/// Out[s, sigma]: outcomes of every full profile at `s` extending `sigma`.
/// Undefined outcomes of partial models are skipped.
inline StateSet outcome_set(const GameModel& m, StateId s, const JointAction& sigma) {
  check_available(m, s, sigma);
  StateSet out(m.state_count());
  const std::size_t n = m.profile_count(s);
  for (std::size_t p = 0; p < n; ++p) {
    const auto profile = m.decode_profile(s, p);
    bool extends = true;
    for (auto a : sigma.coalition.members())
      if (profile[a] != sigma.actions[a]) {
        extends = false;
        break;
      }
    if (!extends) continue;
    if (auto u = m.outcome_at(s, p); u != kNoState) out.insert(u);
  }
  return out;
}

/// One invariant violation found by validate_model().
struct Violation {
  enum class Kind {
    NoAgents,
    NoStates,
    DuplicateAgent,
    DuplicateState,
    DuplicateAction,
    EmptyActionSet,
    OutcomeNotTotal,
  };

  Kind kind;
  std::string message;
  std::optional<std::string> state;
  std::optional<std::string> agent;
  std::optional<std::string> profile;
};

inline const char* to_string(Violation::Kind k) {
  switch (k) {
  case Violation::Kind::NoAgents: return "no agents";
  case Violation::Kind::NoStates: return "no states";
  case Violation::Kind::DuplicateAgent: return "duplicate agent";
  case Violation::Kind::DuplicateState: return "duplicate state";
  case Violation::Kind::DuplicateAction: return "duplicate action";
  case Violation::Kind::EmptyActionSet: return "empty action set";
  case Violation::Kind::OutcomeNotTotal: return "outcome not total";
  }
  return "unknown";
}

inline std::string profile_text(const GameModel& m, StateId s, std::span<const std::size_t> profile) {
  std::string out = "(";
  for (std::size_t a = 0; a < profile.size(); ++a) {
    if (a != 0) out += ",";
    out += m.actions(s, a).at(profile[a]);
  }
  return out + ")";
}

/// Lists every structural problem of `m`; an empty result means `m` is a
/// game model in the strict sense (non-empty action sets, total outcomes).
/// Outcome targets and valuation entries are range-checked on insertion,
/// and no outcome can exist outside the availability product.
inline std::vector<Violation> validate_model(const GameModel& m) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  if (m.agent_count() == 0) out.push_back({K::NoAgents, "model declares no agents", {}, {}, {}});
  if (m.state_count() == 0) out.push_back({K::NoStates, "model declares no states", {}, {}, {}});

  std::set<std::string> seen;
  for (const auto& a : m.agents())
    if (!seen.insert(a).second)
      out.push_back({K::DuplicateAgent, "agent '" + a + "' declared twice", {}, a, {}});
  seen.clear();
  for (const auto& s : m.states())
    if (!seen.insert(s).second)
      out.push_back({K::DuplicateState, "state '" + s + "' declared twice", s, {}, {}});

  for (StateId s = 0; s < m.state_count(); ++s) {
    bool complete = true;
    for (AgentIndex a = 0; a < m.agent_count(); ++a) {
      const auto& acts = m.actions(s, a);
      if (acts.empty()) {
        complete = false;
        out.push_back({K::EmptyActionSet,
                       "empty action set for agent '" + m.agent_name(a) + "' at state '" + m.state_name(s) + "'",
                       m.state_name(s), m.agent_name(a), {}});
      }
      std::set<std::string> names;
      for (const auto& act : acts)
        if (!names.insert(act).second)
          out.push_back({K::DuplicateAction,
                         "action '" + act + "' listed twice for agent '" + m.agent_name(a) + "' at state '" +
                             m.state_name(s) + "'",
                         m.state_name(s), m.agent_name(a), {}});
    }
    if (!complete) continue;
    const std::size_t n = m.profile_count(s);
    for (std::size_t p = 0; p < n; ++p) {
      if (m.outcome_at(s, p) != kNoState) continue;
      const auto prof = profile_text(m, s, m.decode_profile(s, p));
      out.push_back({K::OutcomeNotTotal, "outcome not total: no outcome for " + prof + " at state '" + m.state_name(s) + "'",
                     m.state_name(s), {}, prof});
    }
  }
  return out;
}

inline bool is_valid(const GameModel& m) { return validate_model(m).empty(); }

/// Throws InputError carrying the first violation, if any.
inline void require_valid(const GameModel& m) {
  auto v = validate_model(m);
  if (!v.empty()) throw InputError("invalid model: " + v.front().message);
}

} // namespace constr

#endif // CONSTR_GAME_MODEL_HPP
