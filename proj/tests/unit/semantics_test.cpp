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

#include "constr/formula_io.hpp"
#include "constr/semantics.hpp"
#include "unit/test_support.hpp"

namespace constr {
namespace {

using testing::corpus_model;

bool check(const GameModel& m, const char* state, const char* formula) {
  return holds(m, m.state(state), parse_formula(formula));
}

GameModel ex2_swapped() {
  GameModel m = corpus_model("ex2.cgm");
  const StateId s0 = m.state("s0");
  const std::vector<std::size_t> a2b1{1, 0}, a2b2{1, 1};
  const StateId x = m.outcome(s0, a2b1);
  m.set_outcome(s0, a2b1, m.outcome(s0, a2b2));
  m.set_outcome(s0, a2b2, x);
  return m;
}

TEST(Holds, ConditionalCooperation) {
  const GameModel m = corpus_model("ex1.cgm");
  EXPECT_TRUE(check(m, "s0", "Oc[{a},{b}](p, q)"));
  EXPECT_FALSE(check(m, "s0", "[{b}] q"));
}

TEST(Holds, ReactiveButNotProactive) {
  const GameModel m = corpus_model("ex2.cgm");
  EXPECT_TRUE(check(m, "s0", "Ob[{a},{b}](p, q)"));
  EXPECT_FALSE(check(m, "s0", "Oa[{a},{b}](p, q)"));
  EXPECT_TRUE(check(ex2_swapped(), "s0", "Oa[{a},{b}](p, q)"));
}

TEST(Holds, ObetaWithUnsatisfiablePremiseIsVacuous) {
  for (const char* f : {"ex1.cgm", "exA.cgm", "prop4.cgm"}) {
    const GameModel m = corpus_model(f);
    for (const char* text : {"Ob[{a},{b}](false, p)", "Ob[{},{}](false, false)", "Ob[{a,b},{}](false, q)"})
      EXPECT_EQ(extension(m, parse_formula(text)).states, m.all_states()) << f << " " << text;
  }
}

TEST(Holds, UnknownAgentIsInputError) {
  const GameModel m = corpus_model("ex1.cgm");
  EXPECT_THROW(check(m, "s0", "Oc[{zed},{b}](p, q)"), InputError);
  EXPECT_THROW(check(m, "s9", "p"), InputError);
}

TEST(Holds, UnknownAtomIsFalse) {
  const GameModel m = corpus_model("ex1.cgm");
  EXPECT_TRUE(extension(m, parse_formula("r")).states.empty());
}

TEST(Extension, AtomAndTop) {
  const GameModel m = corpus_model("ex1.cgm");
  StateSet p(m.state_count());
  for (const char* s : {"s0", "s1", "s2", "s4"}) p.insert(m.state(s));
  EXPECT_EQ(extension(m, atom("p")).states, p);
  EXPECT_EQ(extension(m, top()).states, m.all_states());
}

TEST(Extension, BooleanClauses) {
  const GameModel m = corpus_model("ex2.cgm");
  ModelChecker mc(m);
  const Formula p = atom("p"), q = atom("q");
  EXPECT_EQ(mc.extension(neg(p)), mc.extension(p).complement());
  EXPECT_EQ(mc.extension(conj(p, q)), mc.extension(p) & mc.extension(q));
  EXPECT_EQ(mc.extension(disj(p, q)), mc.extension(p) | mc.extension(q));
}

TEST(Extension, ExampleASeparatesTheTwoRoots) {
  const GameModel m = corpus_model("exA.cgm");
  const auto e = extension(m, parse_formula("Oc[{a},{b}](p, q)"));
  EXPECT_TRUE(e.states.contains(m.state("s0")));
  EXPECT_FALSE(e.states.contains(m.state("t0")));
}

TEST(Extension, PropositionFourModel) {
  const GameModel m = corpus_model("prop4.cgm");
  EXPECT_TRUE(check(m, "s0", "Ob[{a,c},{b}](p, q)"));
  EXPECT_FALSE(check(m, "s0", "Ob[{a},{b}](p, q)"));
}

// Every listed definition of the coalition box and the B \ A reductions.
TEST(Definability, IdentitiesHoldOnCorpus) {
  for (const char* f : {"ex1.cgm", "ex2.cgm", "exA.cgm", "exB.cgm", "exC.cgm", "prop4.cgm"}) {
    const GameModel m = corpus_model(f);
    ModelChecker mc(m);
    const auto coalitions = all_coalitions(m.agent_count());
    for (Coalition ca : coalitions) {
      const AgentSet a(m.agent_names(ca));
      const AgentSet rest(m.agent_names(Coalition::grand(m.agent_count()) - ca));
      for (const Formula& phi : {atom("p"), atom("q"), neg(atom("p")), conj(atom("p"), atom("q"))}) {
        const StateSet& box = mc.extension(coalition_box(a, phi));
        EXPECT_EQ(mc.extension(oc(a, a, phi, phi)), box) << f;
        EXPECT_EQ(mc.extension(oc(a, a, phi, top())), box) << f;
        EXPECT_EQ(mc.extension(obeta({}, a, top(), phi)), box) << f;
        // Only one direction of the complement form holds (alpha implies beta).
        EXPECT_TRUE(box.is_subset_of(mc.extension(obeta(rest, a, top(), phi)))) << f;
      }
      for (Coalition cb : coalitions) {
        const AgentSet b(m.agent_names(cb));
        const AgentSet b_minus_a(m.agent_names(cb - ca));
        for (const Formula& phi : {atom("p"), atom("q")})
          for (const Formula& psi : {atom("p"), atom("q")}) {
            EXPECT_EQ(mc.extension(oc(a, b, phi, psi)), mc.extension(oc(a, b_minus_a, phi, psi))) << f;
            EXPECT_EQ(mc.extension(obeta(a, b, phi, psi)), mc.extension(obeta(a, b_minus_a, phi, psi))) << f;
            const StateSet& alpha = mc.extension(oalpha(a, b, phi, psi));
            EXPECT_TRUE(alpha.is_subset_of(mc.extension(obeta(a, b, phi, psi)))) << f;
            for (StateId s = 0; s < m.state_count(); ++s)
              for (Op op : {Op::Oc, Op::Oalpha, Op::Obeta})
                EXPECT_EQ(holds_via_b_minus_a(m, s, strategic(op, a, b, phi, psi)),
                          mc.extension(strategic(op, a, b, phi, psi)).contains(s));
          }
      }
    }
  }
}

// Oβ(Agt\\A, A)(⊤, φ) lets A answer each move of the others, which is weaker
// than the coalition box. The three-agent model separates them at s0.
TEST(Definability, ComplementFormOfTheBoxIsOnlyImplied) {
  const GameModel m = corpus_model("prop4.cgm");
  EXPECT_TRUE(check(m, "s0", "Ob[{a,c},{b}](true, q)"));
  EXPECT_FALSE(check(m, "s0", "[{b}] q"));
}

TEST(HoldsViaBMinusA, SubsetCoalitionUsesEmptyJointAction) {
  const GameModel m = corpus_model("ex2.cgm");
  const Formula f = parse_formula("Oa[{a,b},{b}](p, q)");
  for (StateId s = 0; s < m.state_count(); ++s) EXPECT_EQ(holds_via_b_minus_a(m, s, f), holds(m, s, f));
  EXPECT_THROW(holds_via_b_minus_a(m, 0, atom("p")), InputError);
}

TEST(Explain, ReportsWitnessesAndCounters) {
  const GameModel m = corpus_model("ex2.cgm");
  const auto yes = explain(m, m.state("s0"), parse_formula("Ob[{a},{b}](p, q)"));
  ASSERT_EQ(yes.size(), 2U);
  EXPECT_NE(yes[0].find("{a:a1}"), std::string::npos);
  EXPECT_NE(yes[0].find("{b:b2}"), std::string::npos);
  const auto no = explain(m, m.state("s0"), parse_formula("Oa[{a},{b}](p, q)"));
  ASSERT_EQ(no.size(), 2U);
  EXPECT_NE(no[0].find("defeated"), std::string::npos);
  const auto coop = explain(corpus_model("ex1.cgm"), 0, parse_formula("Oc[{a},{b}](p, q)"));
  EXPECT_NE(coop[0].find("{a:a1}"), std::string::npos);
  EXPECT_NE(coop[1].find("{b:b2}"), std::string::npos);
}

} // namespace
} // namespace constr
