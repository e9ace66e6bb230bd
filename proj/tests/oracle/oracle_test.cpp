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

#include <gtest/gtest.h>

#include <random>

#include "constr/bisim.hpp"
#include "constr/formula_io.hpp"
#include "constr/generators.hpp"
#include "constr/model_io.hpp"
#include "constr/distinguish.hpp"
#include "constr/semantics.hpp"
#include "oracle/brute_force.hpp"

namespace constr {
namespace {

constexpr std::uint64_t kSeed = 20260101;
constexpr Op kOps[] = {Op::Oc, Op::Oalpha, Op::Obeta};

std::vector<StateSet> all_subsets(std::size_t n) {
  std::vector<StateSet> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    StateSet x(n);
    for (StateId s = 0; s < n; ++s)
      if ((bits >> s) & 1U) x.insert(s);
    out.push_back(x);
  }
  return out;
}

bool same_relation(const StateRelation& r, const oracle::Matrix& o) {
  for (StateId i = 0; i < o.size(); ++i)
    for (StateId j = 0; j < o.size(); ++j)
      if (r.contains(i, j) != bool(o[i][j])) return false;
  return true;
}

// Every model of the small family, every operator, coalition pair and pair
// of argument sets: the engine's eval_op against the definition.
TEST(Oracle, OperatorsAgreeOnEveryArgumentSet) {
  std::size_t models = 0, mismatches = 0;
  oracle::for_each_small_model(2, 2, 2, {"p"}, [&](const GameModel& m) {
    ++models;
    ModelChecker mc(m);
    const auto sets = all_subsets(m.state_count());
    for (Op op : kOps)
      for (Coalition a : all_coalitions(m.agent_count()))
        for (Coalition b : all_coalitions(m.agent_count()))
          for (const auto& x : sets)
            for (const auto& y : sets)
              for (StateId s = 0; s < m.state_count(); ++s) {
                const bool fast = mc.eval_at(s, op, a, b, x, y);
                const bool slow = oracle::eval_op(
                    m, s, op, a, b, [&](StateId u) { return x.contains(u); }, [&](StateId u) { return y.contains(u); });
                if (fast != slow && ++mismatches < 5)
                  ADD_FAILURE() << "op " << operator_token(op) << " at s" << s << "\n" << render_model(m);
              }
  });
  EXPECT_GT(models, 1000u);
  EXPECT_EQ(mismatches, 0u);
}

TEST(Oracle, SmallFamilyCountsMatchClosedForm) {
  // One agent, one state, one atom: action count 1 or 2, one target, two valuations.
  std::size_t n = 0;
  oracle::for_each_small_model(1, 1, 2, {"p"}, [&](const GameModel&) { ++n; });
  EXPECT_EQ(n, 4u);
  // Two states: per state 1 or 2 actions; targets 2^(profiles); 4 valuations.
  n = 0;
  oracle::for_each_small_model(1, 2, 2, {"p"}, [&](const GameModel&) { ++n; });
  EXPECT_EQ(n, 4u + (2 + 4) * (2 + 4) * 4u);
}

// Depth-one formulas over a literal pool, and sampled depth-two formulas.
TEST(Oracle, FormulasAgreeOnEnumeratedModels) {
  const std::vector<Formula> base{atom("p"), atom("q"), neg(atom("p")), conj(atom("p"), atom("q")), top()};
  std::size_t checks = 0, mismatches = 0, index = 0;
  oracle::for_each_small_model(2, 2, 2, {"p", "q"}, [&](const GameModel& m) {
    if (index++ % 7 != 0) return;  // every 7th model keeps the run short
    std::vector<Formula> fs;
    for (Op op : kOps)
      for (const auto& a : {AgentSet{}, AgentSet{m.agents()[0]}})
        for (const auto& b : {AgentSet{}, AgentSet(m.agents())})
          for (const auto& x : base)
            for (const auto& y : base) fs.push_back(strategic(op, a, b, x, y));
    std::mt19937_64 rng(derive_seed(kSeed, index));
    FormulaSampler sampler(m.agents(), {"p", "q"}, 2);
    for (int i = 0; i < 10; ++i) fs.push_back(sampler.sample(rng));
    ModelChecker mc(m);
    for (const auto& f : fs)
      for (StateId s = 0; s < m.state_count(); ++s) {
        ++checks;
        if (mc.holds(s, f) != oracle::holds(m, s, f) && ++mismatches < 5)
          ADD_FAILURE() << render(f) << " at s" << s << "\n" << render_model(m);
      }
  });
  EXPECT_GT(checks, 100000u);
  EXPECT_EQ(mismatches, 0u);
}

TEST(Oracle, GreatestBisimulationsAgreeWithSearch) {
  RandomFamily fam;
  fam.min_agents = 1;
  fam.max_agents = 2;
  fam.min_states = 2;
  fam.max_states = 4;
  fam.atoms = {"p"};
  for (std::uint64_t i = 0; i < 60; ++i) {
    const GameModel m = random_model(fam, derive_seed(kSeed, i));
    EXPECT_TRUE(same_relation(greatest_constr_bisim(m), oracle::greatest_by_search(m, false))) << render_model(m);
    EXPECT_TRUE(same_relation(greatest_cl_bisim(m), oracle::greatest_by_search(m, true))) << render_model(m);
  }
}

// The literal clauses, checked by search, also separate the two logically
// equivalent states of the gap fixture.
TEST(Oracle, GapFixtureConfirmedBySearch) {
  const GameModel m = load_model(std::string(CONSTR_FIXTURE_DIR) + "/equivalent_not_bisimilar.cgm");
  const auto by_search = oracle::greatest_by_search(m, false);
  EXPECT_TRUE(same_relation(greatest_constr_bisim(m), by_search));
  EXPECT_FALSE(by_search[m.state("u")][m.state("v")]);
  EXPECT_TRUE(Distinguisher(m).equivalent(m.state("u"), m.state("v")));
}

TEST(Oracle, RelationVerdictsAgreeWithDefinition) {
  RandomFamily fam;
  fam.max_states = 3;
  fam.atoms = {"p"};
  std::mt19937_64 rng(kSeed);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const GameModel m = random_model(fam, derive_seed(kSeed + 1, i));
    const std::size_t n = m.state_count();
    StateRelation r(n);
    oracle::Matrix o(n, std::vector<bool>(n, false));
    std::bernoulli_distribution coin(0.6);
    for (StateId a = 0; a < n; ++a)
      for (StateId b = 0; b < n; ++b)
        if (coin(rng)) {
          r.insert(a, b);
          o[a][b] = true;
        }
    EXPECT_EQ(check_constr_bisim(m, r).ok, oracle::is_bisimulation(m, o, false)) << render_relation(m, r) << render_model(m);
    EXPECT_EQ(check_cl_bisim(m, r).ok, oracle::is_bisimulation(m, o, true)) << render_relation(m, r) << render_model(m);
  }
}

TEST(Oracle, ReducedSecondCoalitionAgrees) {
  RandomFamily fam;
  std::mt19937_64 rng(kSeed);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const GameModel m = random_model(fam, derive_seed(kSeed + 2, i));
    FormulaSampler sampler(m.agents(), {"p", "q"}, 2);
    Formula f = sampler.sample(rng);
    while (!is_strategic(f.op())) f = sampler.sample(rng);
    const StateId s = std::uniform_int_distribution<StateId>(0, m.state_count() - 1)(rng);
    EXPECT_EQ(holds(m, s, f), holds_via_b_minus_a(m, s, f)) << render(f) << "\n" << render_model(m);
  }
}

} // namespace
} // namespace constr
