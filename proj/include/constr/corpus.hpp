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

#ifndef CONSTR_CORPUS_HPP
#define CONSTR_CORPUS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bisim.hpp"
#include "formula_io.hpp"
#include "model_io.hpp"
#include "semantics.hpp"

namespace constr {

// Model and relation texts, kept identical to the files under corpus/ (a
// unit test compares them) so that every fixture can be replayed through
// the CLI.
namespace corpus_text {

inline constexpr std::string_view k_ex1_model = R"cgm(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# Two agents, one decision state: a conditional ability of b.

agents: a b
states: s0 s1 s2 s3 s4
labels s0: p
labels s1: p
labels s2: p q
labels s3: q
labels s4: p

actions s0 a: a1 a2
actions s0 b: b1 b2
go s0 (a1,b1) -> s1
go s0 (a1,b2) -> s2
go s0 (a2,b1) -> s3
go s0 (a2,b2) -> s4

actions s1 a: a1
actions s1 b: b1
go s1 (a1,b1) -> s1

actions s2 a: a1
actions s2 b: b1
go s2 (a1,b1) -> s2

actions s3 a: a1
actions s3 b: b1
go s3 (a1,b1) -> s3

actions s4 a: a1
actions s4 b: b1
go s4 (a1,b1) -> s4
)cgm";

inline constexpr std::string_view k_ex2_model = R"cgm(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# Reactive versus proactive ability of b.

agents: a b
states: s0 s1 s2 s3 s4 s5 s6
labels s0: p
labels s1: p
labels s2: p
labels s3: p q
labels s4: p q
labels s5: p

actions s0 a: a1 a2 a3
actions s0 b: b1 b2
go s0 (a1,b1) -> s2
go s0 (a1,b2) -> s3
go s0 (a2,b1) -> s4
go s0 (a2,b2) -> s5
go s0 (a3,b1) -> s1
go s0 (a3,b2) -> s6

actions s1 a: a1
actions s1 b: b1
go s1 (a1,b1) -> s1

actions s2 a: a1
actions s2 b: b1
go s2 (a1,b1) -> s2

actions s3 a: a1
actions s3 b: b1
go s3 (a1,b1) -> s3

actions s4 a: a1
actions s4 b: b1
go s4 (a1,b1) -> s4

actions s5 a: a1
actions s5 b: b1
go s5 (a1,b1) -> s5

actions s6 a: a1
actions s6 b: b1
go s6 (a1,b1) -> s6
)cgm";

inline constexpr std::string_view k_exA_model = R"cgm(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# Disjoint union of two three-agent models told apart only by Oc.

agents: a b c
states: s0 s1 s2 s3 t0 t1 t2 t3
labels s1: p q
labels s2: p
labels s3: q
labels t1: p q
labels t2: p
labels t3: q

actions s0 a: a1 a2 a3
actions s0 b: b1 b2
actions s0 c: c1 c2
go s0 (a1,b1,c1) -> s1
go s0 (a1,b1,c2) -> s1
go s0 (a1,b2,c1) -> s1
go s0 (a1,b2,c2) -> s2
go s0 (a2,b1,c1) -> s1
go s0 (a2,b1,c2) -> s1
go s0 (a2,b2,c1) -> s1
go s0 (a2,b2,c2) -> s3
go s0 (a3,b1,c1) -> s1
go s0 (a3,b1,c2) -> s2
go s0 (a3,b2,c1) -> s1
go s0 (a3,b2,c2) -> s2

actions s1 a: a1
actions s1 b: b1
actions s1 c: c1
go s1 (a1,b1,c1) -> s1

actions s2 a: a1
actions s2 b: b1
actions s2 c: c1
go s2 (a1,b1,c1) -> s2

actions s3 a: a1
actions s3 b: b1
actions s3 c: c1
go s3 (a1,b1,c1) -> s3

actions t0 a: a1 a2
actions t0 b: b1 b2
actions t0 c: c1 c2
go t0 (a1,b1,c1) -> t1
go t0 (a1,b1,c2) -> t2
go t0 (a1,b2,c1) -> t1
go t0 (a1,b2,c2) -> t2
go t0 (a2,b1,c1) -> t1
go t0 (a2,b1,c2) -> t1
go t0 (a2,b2,c1) -> t1
go t0 (a2,b2,c2) -> t3

actions t1 a: a1
actions t1 b: b1
actions t1 c: c1
go t1 (a1,b1,c1) -> t1

actions t2 a: a1
actions t2 b: b1
actions t2 c: c1
go t2 (a1,b1,c1) -> t2

actions t3 a: a1
actions t3 b: b1
actions t3 c: c1
go t3 (a1,b1,c1) -> t3
)cgm";

inline constexpr std::string_view k_exB_model = R"cgm(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# Disjoint union of two two-agent models told apart only by the conditional box.

agents: a b
states: s0 s1 s2 s3 t0 t1 t2 t3
labels s1: p q
labels s2: p
labels s3: q
labels t1: p q
labels t2: p
labels t3: q

actions s0 a: a1 a2
actions s0 b: b1 b2 b3
go s0 (a1,b1) -> s1
go s0 (a1,b2) -> s1
go s0 (a1,b3) -> s1
go s0 (a2,b1) -> s1
go s0 (a2,b2) -> s2
go s0 (a2,b3) -> s3

actions s1 a: a1
actions s1 b: b1
go s1 (a1,b1) -> s1

actions s2 a: a1
actions s2 b: b1
go s2 (a1,b1) -> s2

actions s3 a: a1
actions s3 b: b1
go s3 (a1,b1) -> s3

actions t0 a: a1 a2 a3
actions t0 b: b1 b2 b3
go t0 (a1,b1) -> t1
go t0 (a1,b2) -> t2
go t0 (a1,b3) -> t1
go t0 (a2,b1) -> t1
go t0 (a2,b2) -> t1
go t0 (a2,b3) -> t1
go t0 (a3,b1) -> t1
go t0 (a3,b2) -> t2
go t0 (a3,b3) -> t3

actions t1 a: a1
actions t1 b: b1
go t1 (a1,b1) -> t1

actions t2 a: a1
actions t2 b: b1
go t2 (a1,b1) -> t2

actions t3 a: a1
actions t3 b: b1
go t3 (a1,b1) -> t3
)cgm";

inline constexpr std::string_view k_exC_model = R"cgm(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# Disjoint union of two three-agent models told apart only by Oa.

agents: a b c
states: s0 s1 s2 s3 t0 t1 t2 t3
labels s1: p q
labels s2: p
labels s3: q
labels t1: p q
labels t2: p
labels t3: q

actions s0 a: a1 a2 a3 a4
actions s0 b: b1 b2
actions s0 c: c1 c2
go s0 (a1,b1,c1) -> s3
go s0 (a1,b1,c2) -> s1
go s0 (a1,b2,c1) -> s1
go s0 (a1,b2,c2) -> s1
go s0 (a2,b1,c1) -> s3
go s0 (a2,b1,c2) -> s1
go s0 (a2,b2,c1) -> s1
go s0 (a2,b2,c2) -> s2
go s0 (a3,b1,c1) -> s1
go s0 (a3,b1,c2) -> s1
go s0 (a3,b2,c1) -> s1
go s0 (a3,b2,c2) -> s3
go s0 (a4,b1,c1) -> s1
go s0 (a4,b1,c2) -> s3
go s0 (a4,b2,c1) -> s1
go s0 (a4,b2,c2) -> s1

actions s1 a: a1
actions s1 b: b1
actions s1 c: c1
go s1 (a1,b1,c1) -> s1

actions s2 a: a1
actions s2 b: b1
actions s2 c: c1
go s2 (a1,b1,c1) -> s2

actions s3 a: a1
actions s3 b: b1
actions s3 c: c1
go s3 (a1,b1,c1) -> s3

actions t0 a: a1 a2 a3
actions t0 b: b1 b2
actions t0 c: c1 c2
go t0 (a1,b1,c1) -> t1
go t0 (a1,b1,c2) -> t3
go t0 (a1,b2,c1) -> t1
go t0 (a1,b2,c2) -> t1
go t0 (a2,b1,c1) -> t3
go t0 (a2,b1,c2) -> t1
go t0 (a2,b2,c1) -> t1
go t0 (a2,b2,c2) -> t2
go t0 (a3,b1,c1) -> t3
go t0 (a3,b1,c2) -> t1
go t0 (a3,b2,c1) -> t1
go t0 (a3,b2,c2) -> t3

actions t1 a: a1
actions t1 b: b1
actions t1 c: c1
go t1 (a1,b1,c1) -> t1

actions t2 a: a1
actions t2 b: b1
actions t2 c: c1
go t2 (a1,b1,c1) -> t2

actions t3 a: a1
actions t3 b: b1
actions t3 c: c1
go t3 (a1,b1,c1) -> t3
)cgm";

inline constexpr std::string_view k_prop4_model = R"cgm(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# Three agents: Ob is not anti-monotone in its first coalition.

agents: a b c
states: s0 s1 s2 s3 s4
labels s1: p q
labels s2: p
labels s3: p q
labels s4: p

actions s0 a: a1
actions s0 b: b1 b2
actions s0 c: c1 c2
go s0 (a1,b1,c1) -> s1
go s0 (a1,b1,c2) -> s4
go s0 (a1,b2,c1) -> s2
go s0 (a1,b2,c2) -> s3

actions s1 a: a1
actions s1 b: b1
actions s1 c: c1
go s1 (a1,b1,c1) -> s1

actions s2 a: a1
actions s2 b: b1
actions s2 c: c1
go s2 (a1,b1,c1) -> s2

actions s3 a: a1
actions s3 b: b1
actions s3 c: c1
go s3 (a1,b1,c1) -> s3

actions s4 a: a1
actions s4 b: b1
actions s4 c: c1
go s4 (a1,b1,c1) -> s4
)cgm";

inline constexpr std::string_view k_exA_relation = R"rel(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# The relation pairing s_i with t_i.

s0 ~ t0
s1 ~ t1
s2 ~ t2
s3 ~ t3
)rel";

inline constexpr std::string_view k_exB_relation = R"rel(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# The relation pairing s_i with t_i.

s0 ~ t0
s1 ~ t1
s2 ~ t2
s3 ~ t3
)rel";

inline constexpr std::string_view k_exC_relation = R"rel(# Copyright 2026 The ConStR Toolkit Authors
# SPDX-License-Identifier: Apache-2.0
#
# The relation pairing s_i with t_i.

s0 ~ t0
s1 ~ t1
s2 ~ t2
s3 ~ t3
)rel";

} // namespace corpus_text

/// A formula expected to hold (or fail) at a named state.
struct StateCheck {
  std::string state;
  std::string formula;
  bool expected;
};

/// A candidate relation with its expected verdicts under both notions.
struct RelationCheck {
  std::string text;
  bool cl_expected;
  bool constr_expected;
};

struct Fixture {
  std::string name;
  std::string file;   // file name under corpus/, empty for derived fixtures
  std::string role;   // what the fixture demonstrates
  std::string model_text;
  std::vector<StateCheck> checks;
  std::optional<RelationCheck> relation;

  GameModel model() const { return parse_model(model_text); }
};

/// Copy of `m` with the outcomes of two action profiles at `s` exchanged.
/// Profiles name one action per agent, in declared agent order.
inline GameModel swap_outcomes(const GameModel& m, const std::string& state, const std::vector<std::string>& p1,
                               const std::vector<std::string>& p2) {
  GameModel out = m;
  const StateId s = m.state(state);
  auto indices = [&](const std::vector<std::string>& names) {
    if (names.size() != m.agent_count()) throw InputError("profile must name one action per agent");
    std::vector<std::size_t> p;
    for (AgentIndex a = 0; a < names.size(); ++a) {
      auto act = m.find_action(s, a, names[a]);
      if (!act) throw InputError("action '" + names[a] + "' is not available at '" + state + "'");
      p.push_back(*act);
    }
    return p;
  };
  const auto i1 = indices(p1);
  const auto i2 = indices(p2);
  out.set_outcome(s, i1, m.outcome(s, i2));
  out.set_outcome(s, i2, m.outcome(s, i1));
  return out;
}

inline const std::vector<Fixture>& corpus_fixtures() {
  static const std::vector<Fixture> fixtures = [] {
    using namespace corpus_text;
    std::vector<Fixture> f;
    f.push_back({"ex1", "ex1.cgm", "conditional ability of b without unconditional ability", std::string(k_ex1_model),
                 {{"s0", "Oc[{a},{b}](p, q)", true}, {"s0", "[{b}] q", false}},
                 std::nullopt});
    f.push_back({"ex2", "ex2.cgm", "beta-effectivity holds while alpha-effectivity fails", std::string(k_ex2_model),
                 {{"s0", "Ob[{a},{b}](p, q)", true}, {"s0", "Oa[{a},{b}](p, q)", false}},
                 std::nullopt});
    const GameModel swapped = swap_outcomes(parse_model(k_ex2_model), "s0", {"a2", "b1"}, {"a2", "b2"});
    f.push_back({"ex2-swapped", "", "ex2 with the outcomes of (a2,b1) and (a2,b2) exchanged; alpha now holds",
                 render_model(swapped),
                 {{"s0", "Oa[{a},{b}](p, q)", true}},
                 std::nullopt});
    f.push_back({"exA", "exA.cgm", "CL-bisimilar states told apart by the conditional operator", std::string(k_exA_model),
                 {{"s0", "Oc[{a},{b}](p, q)", true}, {"t0", "Oc[{a},{b}](p, q)", false}},
                 RelationCheck{std::string(k_exA_relation), true, false}});
    f.push_back({"exB", "exB.cgm", "CL-bisimilar states told apart by the conditional box", std::string(k_exB_model),
                 {{"s0", "Cb[{a}](p, q)", true}, {"t0", "Cb[{a}](p, q)", false}},
                 RelationCheck{std::string(k_exB_relation), true, false}});
    f.push_back({"exC", "exC.cgm", "CL-bisimilar states told apart by alpha-effectivity", std::string(k_exC_model),
                 {{"s0", "Oa[{b},{a}](q, p)", true}, {"t0", "Oa[{b},{a}](q, p)", false}},
                 RelationCheck{std::string(k_exC_relation), true, false}});
    f.push_back({"prop4", "prop4.cgm", "beta-effectivity is not anti-monotone in its first coalition",
                 std::string(k_prop4_model),
                 {{"s0", "Ob[{a,c},{b}](p, q)", true}, {"s0", "Ob[{a},{b}](p, q)", false}},
                 std::nullopt});
    return f;
  }();
  return fixtures;
}

/// One executed fixture check.
struct CorpusResult {
  std::string fixture;
  std::string check;  // e.g. "s0 |= Oc[{a},{b}](p, q)" or "relation is a CL-bisimulation"
  bool expected = true;
  bool actual = false;
  std::string detail; // error text or failing clause, if any

  bool passed() const { return detail.empty() && expected == actual; }
};

struct CorpusReport {
  std::vector<CorpusResult> results;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : results) n += !r.passed();
    return n;
  }
  bool ok() const { return failures() == 0; }
};

/// Runs every check of one fixture. Errors are reported as failed checks,
/// never thrown.
inline void run_fixture(const Fixture& fx, CorpusReport& report) {
  auto record = [&](std::string check, bool expected, auto&& compute) {
    CorpusResult r{fx.name, std::move(check), expected, !expected, {}};
    try {
      r.actual = compute(r.detail);
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    report.results.push_back(std::move(r));
  };

  GameModel m;
  try {
    m = fx.model();
  } catch (const std::exception& e) {
    report.results.push_back({fx.name, "model parses", true, false, e.what()});
    return;
  }
  record("model is valid", true, [&](std::string& detail) {
    const auto v = validate_model(m);
    if (!v.empty()) detail = v.front().message;
    return v.empty();
  });

  ModelChecker mc(m);
  for (const auto& c : fx.checks)
    record(c.state + " |= " + c.formula, c.expected,
           [&](std::string&) { return mc.holds(m.state(c.state), parse_formula(c.formula)); });

  if (fx.relation) {
    const auto& rc = *fx.relation;
    record("relation is a CL-bisimulation", rc.cl_expected, [&](std::string&) {
      return check_cl_bisim(m, parse_relation(m, rc.text)).ok;
    });
    record("relation is a ConStR-bisimulation", rc.constr_expected, [&](std::string&) {
      return check_constr_bisim(m, parse_relation(m, rc.text)).ok;
    });
  }
}

inline CorpusReport run_corpus() {
  CorpusReport report;
  for (const auto& fx : corpus_fixtures()) run_fixture(fx, report);
  return report;
}

} // namespace constr

#endif // CONSTR_CORPUS_HPP
