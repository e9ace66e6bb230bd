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

#ifndef CONSTR_GENERATORS_HPP
#define CONSTR_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "game_model.hpp"

namespace constr {

/// Exact shape of a generated model: every agent has `actions` actions at
/// every state. Agents are named a, b, c, ...; states s0, s1, ...;
/// actions a1, a2, ... after their agent.
struct GeneratorBounds {
  std::size_t agents = 2;
  std::size_t states = 2;
  std::size_t actions = 2;
  std::vector<std::string> atoms{"p", "q"};
};

inline constexpr std::uint64_t kCountOverflow = std::numeric_limits<std::uint64_t>::max();

namespace detail {

inline void check_bounds(std::size_t agents, std::size_t states, std::size_t actions) {
  if (agents == 0 || states == 0 || actions == 0) throw InputError("generator bounds must all be at least 1");
  if (agents > 26) throw InputError("generators name agents a..z; at most 26 agents");
}

inline std::string agent_label(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

inline GameModel blank_model(std::size_t agents, std::size_t states) {
  std::vector<std::string> an, sn;
  for (std::size_t i = 0; i < agents; ++i) an.push_back(agent_label(i));
  for (std::size_t i = 0; i < states; ++i) sn.push_back("s" + std::to_string(i));
  return GameModel(std::move(an), std::move(sn));
}

inline std::vector<std::string> action_names(std::size_t agent, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= count; ++k) out.push_back(agent_label(agent) + std::to_string(k));
  return out;
}

inline std::uint64_t mul(std::uint64_t x, std::uint64_t y) {
  if (x == kCountOverflow || y == kCountOverflow) return kCountOverflow;
  if (y != 0 && x > kCountOverflow / y) return kCountOverflow;
  return x * y;
}

inline std::uint64_t power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp && r != kCountOverflow; ++i) r = mul(r, base);
  return r;
}

} // namespace detail

/// Number of models with the given shape, or kCountOverflow.
inline std::uint64_t count_models(const GeneratorBounds& b) {
  detail::check_bounds(b.agents, b.states, b.actions);
  const std::uint64_t profiles = detail::power(b.actions, b.agents);
  const std::uint64_t per_state = detail::mul(detail::power(b.states, profiles), detail::power(2, b.atoms.size()));
  return detail::power(per_state, b.states);
}

/// Enumerates every outcome function and valuation for one shape in a fixed
/// order: an odometer over outcome digits then label digits, last digit fastest.
class ModelEnumerator {
public:
  ModelEnumerator(GeneratorBounds bounds, std::uint64_t cap) : bounds_(std::move(bounds)) {
    count_ = count_models(bounds_);
    if (count_ > cap)
      throw InputError("family has " + (count_ == kCountOverflow ? std::string("more than 2^64") : std::to_string(count_)) +
                       " models, above the cap of " + std::to_string(cap));
    model_ = detail::blank_model(bounds_.agents, bounds_.states);
    for (StateId s = 0; s < bounds_.states; ++s)
      for (AgentIndex a = 0; a < bounds_.agents; ++a) model_.set_actions(s, a, detail::action_names(a, bounds_.actions));
    profiles_ = model_.profile_count(0);
    digits_.assign(bounds_.states * profiles_ + bounds_.states * bounds_.atoms.size(), 0);
  }

  std::uint64_t count() const { return count_; }

  /// Writes the next model into `out`; false once exhausted.
  bool next(GameModel& out) {
    if (done_) return false;
    if (started_ && !advance()) {
      done_ = true;
      return false;
    }
    started_ = true;
    const std::size_t outcome_digits = bounds_.states * profiles_;
    for (std::size_t i = 0; i < outcome_digits; ++i) model_.set_outcome_at(i / profiles_, i % profiles_, digits_[i]);
    for (StateId s = 0; s < bounds_.states; ++s)
      for (std::size_t k = 0; k < bounds_.atoms.size(); ++k) {
        if (digits_[outcome_digits + s * bounds_.atoms.size() + k] != 0)
          model_.add_label(s, bounds_.atoms[k]);
        else
          model_.remove_label(s, bounds_.atoms[k]);
      }
    out = model_;
    return true;
  }

private:
  bool advance() {
    const std::size_t outcome_digits = bounds_.states * profiles_;
    for (std::size_t i = digits_.size(); i-- > 0;) {
      const std::size_t radix = i < outcome_digits ? bounds_.states : 2;
      if (++digits_[i] < radix) return true;
      digits_[i] = 0;
    }
    return false;
  }

  GeneratorBounds bounds_;
  std::uint64_t count_ = 0;
  GameModel model_;
  std::size_t profiles_ = 0;
  std::vector<std::size_t> digits_;
  bool started_ = false;
  bool done_ = false;
};

/// Every model of the shape, after checking the count against `cap`.
inline std::vector<GameModel> enumerate_models(const GeneratorBounds& b, std::uint64_t cap = 1'000'000) {
  ModelEnumerator e(b, cap);
  std::vector<GameModel> out;
  out.reserve(static_cast<std::size_t>(e.count()));
  GameModel m;
  while (e.next(m)) out.push_back(m);
  return out;
}

/// Uniform independent outcomes and labels; deterministic in the seed.
inline GameModel random_model(const GeneratorBounds& b, std::uint64_t seed) {
  detail::check_bounds(b.agents, b.states, b.actions);
  std::mt19937_64 rng(seed);
  GameModel m = detail::blank_model(b.agents, b.states);
  for (StateId s = 0; s < b.states; ++s)
    for (AgentIndex a = 0; a < b.agents; ++a) m.set_actions(s, a, detail::action_names(a, b.actions));
  std::uniform_int_distribution<std::size_t> target(0, b.states - 1);
  std::bernoulli_distribution coin(0.5);
  for (StateId s = 0; s < b.states; ++s) {
    for (std::size_t p = 0; p < m.profile_count(s); ++p) m.set_outcome_at(s, p, target(rng));
    for (const auto& atom : b.atoms)
      if (coin(rng)) m.add_label(s, atom);
  }
  return m;
}

/// Ranges for sampling model shapes. Unlike GeneratorBounds, action counts
/// vary independently per state and agent.
struct RandomFamily {
  std::size_t min_agents = 2, max_agents = 3;
  std::size_t min_states = 1, max_states = 4;
  std::size_t min_actions = 1, max_actions = 2;
  std::vector<std::string> atoms{"p", "q"};
};

inline GameModel random_model(const RandomFamily& f, std::uint64_t seed) {
  if (f.min_agents > f.max_agents || f.min_states > f.max_states || f.min_actions > f.max_actions)
    throw InputError("random family ranges must have min <= max");
  detail::check_bounds(f.min_agents, f.min_states, f.min_actions);
  detail::check_bounds(f.max_agents, f.max_states, f.max_actions);
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t agents = pick(f.min_agents, f.max_agents);
  const std::size_t states = pick(f.min_states, f.max_states);
  GameModel m = detail::blank_model(agents, states);
  for (StateId s = 0; s < states; ++s)
    for (AgentIndex a = 0; a < agents; ++a) m.set_actions(s, a, detail::action_names(a, pick(f.min_actions, f.max_actions)));
  std::bernoulli_distribution coin(0.5);
  for (StateId s = 0; s < states; ++s) {
    for (std::size_t p = 0; p < m.profile_count(s); ++p) m.set_outcome_at(s, p, pick(0, states - 1));
    for (const auto& atom : f.atoms)
      if (coin(rng)) m.add_label(s, atom);
  }
  return m;
}

/// Seed of the i-th model drawn from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t{words[0]} << 32) | words[1];
}

/// Random formulas over given agents and atoms with modal depth at most
/// `max_depth`. Boolean structure is capped by `max_size` nodes so samples
/// stay small.
class FormulaSampler {
public:
  FormulaSampler(std::vector<std::string> agents, std::vector<std::string> atoms, std::size_t max_depth,
                 std::size_t max_size = 12)
      : agents_(std::move(agents)), atoms_(std::move(atoms)), max_depth_(max_depth), max_size_(max_size) {
    if (atoms_.empty()) throw InputError("formula sampler needs at least one atom");
  }

  Formula sample(std::mt19937_64& rng) const {
    std::size_t budget = max_size_;
    return grow(rng, max_depth_, budget);
  }

private:
  Formula grow(std::mt19937_64& rng, std::size_t depth, std::size_t& budget) const {
    auto roll = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    if (budget <= 1) return leaf(rng);
    --budget;
    switch (roll(depth > 0 ? 6 : 4)) {
    case 0: return leaf(rng);
    case 1: return neg(grow(rng, depth, budget));
    case 2: {
      Formula l = grow(rng, depth, budget);
      return conj(l, grow(rng, depth, budget));
    }
    case 3: return roll(2) ? leaf(rng) : disj(leaf(rng), grow(rng, depth, budget));
    default: {
      static constexpr Op ops[] = {Op::Oc, Op::Oalpha, Op::Obeta};
      const Op op = ops[roll(3)];
      AgentSet a = coalition(rng), b = coalition(rng);
      Formula x = grow(rng, depth - 1, budget);
      return strategic(op, std::move(a), std::move(b), x, grow(rng, depth - 1, budget));
    }
    }
  }

  Formula leaf(std::mt19937_64& rng) const {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, atoms_.size() + 1)(rng);
    if (k == atoms_.size()) return top();
    if (k == atoms_.size() + 1) return bottom();
    return atom(atoms_[k]);
  }

  AgentSet coalition(std::mt19937_64& rng) const {
    std::vector<std::string> names;
    for (const auto& a : agents_)
      if (std::bernoulli_distribution(0.5)(rng)) names.push_back(a);
    return AgentSet(std::move(names));
  }

  std::vector<std::string> agents_;
  std::vector<std::string> atoms_;
  std::size_t max_depth_;
  std::size_t max_size_;
};

} // namespace constr

#endif // CONSTR_GENERATORS_HPP
