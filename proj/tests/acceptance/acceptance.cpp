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

// Acceptance run: one PASS/FAIL line per criterion, followed by indented
// detail lines. `--only N` runs a single criterion. Exit status is 1 if any
// criterion that ran failed.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "constr/constr.hpp"
#include "oracle/brute_force.hpp"

namespace constr {
namespace {

constexpr std::uint64_t kSeed = kDefaultSeed;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;
};

std::vector<std::string> atoms_or_default(const GameModel& m) {
  auto atoms = m.atoms();
  if (atoms.empty()) atoms = {"p"};
  return atoms;
}

// ------------------------------------------------------------ criterion 1

Outcome fixture_verdicts() {
  const auto report = run_corpus();
  Outcome o;
  o.pass = report.ok();
  o.summary = std::to_string(report.results.size() - report.failures()) + "/" + std::to_string(report.results.size()) +
              " fixture checks reproduce";
  for (const auto& r : report.results)
    if (!r.passed())
      o.details.push_back(r.fixture + ": " + r.check + " expected " + (r.expected ? "true" : "false") +
                          (r.detail.empty() ? "" : " (" + r.detail + ")"));
  return o;
}

// ------------------------------------------------------------ criterion 2

// [A]φ straight from its semantics: some joint action of A forces φ.
StateSet coalition_box_direct(const GameModel& m, Coalition a, const StateSet& phi) {
  StateSet out(m.state_count());
  for (StateId s = 0; s < m.state_count(); ++s)
    for (const auto& sigma : joint_actions(m, a, s))
      if (outcome_set(m, s, sigma).is_subset_of(phi)) {
        out.insert(s);
        break;
      }
  return out;
}

Outcome definability() {
  struct Identity {
    std::string name;
    std::size_t violations = 0;
    std::string first;
  };
  std::vector<Identity> ids{{"[A]φ = Oc(A,A)(φ,φ)"},      {"[A]φ = Oc(A,A)(φ,⊤)"},
                            {"[A]φ = Oa(∅,A)(⊤,φ)"},      {"[A]φ = Ob(∅,A)(⊤,φ)"},
                            {"[A]φ = Ob(Agt\\A,A)(⊤,φ)"}, {"Oc(A,B)(φ,ψ) = Oc(A,B\\A)(φ,ψ)"},
                            {"Ob(A,B)(φ,ψ) = Ob(A,B\\A)(φ,ψ)"}};

  std::vector<std::pair<std::string, GameModel>> models;
  for (const auto& fx : corpus_fixtures()) models.emplace_back(fx.name, fx.model());
  RandomFamily fam;
  fam.min_agents = 2;
  fam.max_agents = 3;
  fam.min_states = 2;
  fam.max_states = 4;
  fam.min_actions = fam.max_actions = 2;
  for (std::uint64_t i = 0; i < 1000; ++i)
    models.emplace_back("random #" + std::to_string(i), random_model(fam, derive_seed(kSeed, i)));

  for (const auto& [name, m] : models) {
    ModelChecker mc(m);
    const Formula p = atom("p"), q = atom("q");
    const std::vector<Formula> pool{p, q, neg(p), conj(p, q), disj(p, q), top(), bottom(),
                                    coalition_box(AgentSet{m.agents()[0]}, q)};
    auto names = [&](Coalition c) { return AgentSet(m.agent_names(c)); };
    const Coalition grand = Coalition::grand(m.agent_count());
    auto note = [&](Identity& id, const Formula& f, const Formula& g, const StateSet& lhs, const StateSet& rhs) {
      if (lhs == rhs) return;
      if (id.violations++ == 0) {
        const StateSet diff = (lhs - rhs) | (rhs - lhs);
        id.first = name + " at " + m.state_name(diff.first()) + ": " + render(f) + " vs " + render(g);
      }
    };
    for (Coalition a : all_coalitions(m.agent_count()))
      for (const auto& phi : pool) {
        const StateSet box = coalition_box_direct(m, a, mc.extension(phi));
        const std::vector<Formula> defs{oc(names(a), names(a), phi, phi), oc(names(a), names(a), phi, top()),
                                        oalpha({}, names(a), top(), phi), obeta({}, names(a), top(), phi),
                                        obeta(names(grand - a), names(a), top(), phi)};
        const Formula box_text = parse_formula("[" + render(names(a)) + "] " + render(phi));
        for (std::size_t k = 0; k < defs.size(); ++k) note(ids[k], box_text, defs[k], box, mc.extension(defs[k]));
        for (Coalition b : all_coalitions(m.agent_count()))
          for (const auto& psi : pool) {
            const Formula c1 = oc(names(a), names(b), phi, psi), c2 = oc(names(a), names(b - a), phi, psi);
            note(ids[5], c1, c2, mc.extension(c1), mc.extension(c2));
            const Formula b1 = obeta(names(a), names(b), phi, psi), b2 = obeta(names(a), names(b - a), phi, psi);
            note(ids[6], b1, b2, mc.extension(b1), mc.extension(b2));
          }
      }
  }

  Outcome o;
  std::size_t total = 0;
  for (const auto& id : ids) {
    total += id.violations;
    o.details.push_back((id.violations == 0 ? "holds     " : "VIOLATED  ") + id.name + "  violations=" +
                        std::to_string(id.violations) + (id.first.empty() ? "" : "  first: " + id.first));
  }
  o.pass = total == 0;
  o.summary = std::to_string(ids.size()) + " identities on " + std::to_string(models.size()) + " models, " +
              std::to_string(total) + " violations";
  if (!o.pass)
    o.details.push_back("Ob(Agt\\A,A)(⊤,φ) is beta-effectivity of A against the rest; [A]φ is alpha-effectivity. "
                        "Only [A]φ -> Ob(Agt\\A,A)(⊤,φ) is valid.");
  return o;
}

// ------------------------------------------------------------ criterion 3

Outcome axiom_suite() {
  Outcome o;
  const auto corpus = corpus_fixtures();
  std::vector<SourcedModel> fixed;
  for (const auto& fx : corpus) fixed.push_back({"corpus " + fx.name, fx.model()});

  SuiteConfig valid;
  valid.exclude = documented_invalid_schemes();
  const auto vr = run_suite(valid, fixed);
  std::size_t bad = 0;
  for (const auto& v : vr.verdicts)
    if (!v.passed()) {
      ++bad;
      o.details.push_back("counterexample to " + v.id + " from " + v.counterexample->source);
    }
  o.details.push_back(std::to_string(vr.verdicts.size()) + " valid schemes over " + std::to_string(vr.models) +
                      " models (corpus, exhaustive 2 agents <=2 states <=2 actions, 10000 random): " +
                      std::to_string(bad) + " with counterexamples");

  auto anti = [&](const std::string& label, SuiteConfig cfg, const std::vector<SourcedModel>& models) {
    cfg.include = {"ObAntiMon"};
    const auto r = run_suite(cfg, models);
    const auto& v = r.verdicts.front();
    const bool ok = v.counterexample && verify_counterexample(*v.counterexample);
    o.details.push_back("ObAntiMon via " + label + ": " +
                        (ok ? "verified counterexample from " + v.counterexample->source + " at " +
                                  v.counterexample->model.state_name(v.counterexample->state) + ": " +
                                  render(v.counterexample->instance.conclusion.formula())
                            : std::string("no verified counterexample")));
    return ok;
  };
  SuiteConfig prop4_only;
  prop4_only.exhaustive.reset();
  prop4_only.random_models = 0;
  std::vector<SourcedModel> prop4;
  for (const auto& fx : corpus)
    if (fx.name == "prop4") prop4.push_back({"corpus prop4", fx.model()});
  const bool from_prop4 = anti("the embedded model", prop4_only, prop4);

  SuiteConfig search;
  search.exhaustive.reset();
  search.random.min_agents = search.random.max_agents = 3;
  const bool from_random = anti("random search with 3 agents", search, {});

  o.pass = bad == 0 && from_prop4 && from_random;
  o.summary = bad == 0 ? "all valid schemes hold" : std::to_string(bad) + " valid schemes refuted";
  o.summary += std::string(", anti-monotonicity refuted ") + (from_prop4 && from_random ? "both ways" : "incompletely");
  return o;
}

// ------------------------------------------------------------ criterion 4

Outcome bisim_invariance() {
  Outcome o;
  std::size_t pairs = 0, disagreements = 0;
  std::uint64_t index = 0;
  for (const auto& fx : corpus_fixtures()) {
    const GameModel m = fx.model();
    const auto r = greatest_constr_bisim(m);
    std::mt19937_64 rng(derive_seed(kSeed, index++));
    FormulaSampler sampler(m.agents(), atoms_or_default(m), 3);
    ModelChecker mc(m);
    std::vector<Formula> fs;
    for (int i = 0; i < 500; ++i) fs.push_back(sampler.sample(rng));
    for (auto [s, t] : r.pairs()) {
      ++pairs;
      for (const auto& f : fs)
        if (mc.holds(s, f) != mc.holds(t, f) && disagreements++ < 5)
          o.details.push_back(fx.name + ": " + m.state_name(s) + " ~ " + m.state_name(t) + " disagree on " + render(f));
    }
  }
  o.pass = disagreements == 0;
  o.summary = std::to_string(pairs) + " bisimilar pairs x 500 formulas of depth <= 3, " + std::to_string(disagreements) +
              " disagreements";
  return o;
}

// ------------------------------------------------------------ criterion 5

Outcome distinguishing_pairs() {
  Outcome o;
  std::size_t distinguished = 0, silent = 0, problems = 0;
  for (const auto& fx : corpus_fixtures()) {
    const GameModel m = fx.model();
    const auto r = greatest_constr_bisim(m);
    ModelChecker mc(m);
    for (StateId s = 0; s < m.state_count(); ++s)
      for (StateId t = 0; t < m.state_count(); ++t) {
        const auto f = distinguishing_formula(m, s, t);
        const std::string pair = fx.name + " (" + m.state_name(s) + ", " + m.state_name(t) + ")";
        if (r.contains(s, t)) {
          if (f) {
            ++problems;
            o.details.push_back(pair + ": bisimilar but got " + render(*f));
          } else {
            ++silent;
          }
        } else if (!f) {
          ++problems;
          o.details.push_back(pair + ": not bisimilar and no formula");
        } else if (!mc.holds(s, *f) || mc.holds(t, *f)) {
          ++problems;
          o.details.push_back(pair + ": formula does not distinguish: " + render(*f));
        } else {
          ++distinguished;
        }
      }
  }
  o.pass = problems == 0;
  o.summary = std::to_string(distinguished) + " non-bisimilar pairs distinguished and checked, " +
              std::to_string(silent) + " bisimilar pairs with no formula, " + std::to_string(problems) + " problems";
  return o;
}

// ------------------------------------------------------------ criterion 6

Outcome oracle_equivalence() {
  Outcome o;
  // Operators on every pair of argument sets. Labels play no part here, so
  // the family is enumerated without atoms; by induction on formulas this
  // covers every formula over any atoms.
  std::size_t structures = 0, op_checks = 0, op_mismatch = 0;
  oracle::for_each_small_model(2, 2, 2, {}, [&](const GameModel& m) {
    ++structures;
    ModelChecker mc(m);
    const std::size_t n = m.state_count();
    for (std::size_t xb = 0; xb < (std::size_t{1} << n); ++xb)
      for (std::size_t yb = 0; yb < (std::size_t{1} << n); ++yb) {
        StateSet x(n), y(n);
        for (StateId s = 0; s < n; ++s) {
          if ((xb >> s) & 1U) x.insert(s);
          if ((yb >> s) & 1U) y.insert(s);
        }
        for (Op op : {Op::Oc, Op::Oalpha, Op::Obeta})
          for (Coalition a : all_coalitions(m.agent_count()))
            for (Coalition b : all_coalitions(m.agent_count()))
              for (StateId s = 0; s < n; ++s) {
                ++op_checks;
                const bool slow = oracle::eval_op(
                    m, s, op, a, b, [&](StateId u) { return x.contains(u); }, [&](StateId u) { return y.contains(u); });
                if (mc.eval_at(s, op, a, b, x, y) != slow && op_mismatch++ < 5)
                  o.details.push_back(std::string("operator ") + operator_token(op) + " differs in\n" + render_model(m));
              }
      }
  });
  o.details.push_back(std::to_string(structures) + " outcome structures, " + std::to_string(op_checks) +
                      " operator checks over all argument sets, " + std::to_string(op_mismatch) + " mismatches");

  std::size_t models = 0, checks = 0, formula_mismatch = 0;
  const std::vector<std::string> atoms{"p", "q"};
  oracle::for_each_small_model(2, 2, 2, atoms, [&](const GameModel& m) {
    ++models;
    const Formula p = atom("p"), q = atom("q");
    const std::vector<Formula> firsts{p, neg(q), top()};
    const std::vector<Formula> seconds{q, conj(p, q), top()};
    std::vector<Formula> fs;
    for (Coalition a : all_coalitions(m.agent_count()))
      for (Coalition b : all_coalitions(m.agent_count()))
        for (Op op : {Op::Oc, Op::Oalpha, Op::Obeta})
          for (const auto& x : firsts)
            for (const auto& y : seconds) fs.push_back(strategic(op, AgentSet(m.agent_names(a)), AgentSet(m.agent_names(b)), x, y));
    std::mt19937_64 rng(derive_seed(kSeed, models));
    FormulaSampler sampler(m.agents(), atoms, 2);
    for (int i = 0; i < 20; ++i) fs.push_back(sampler.sample(rng));
    ModelChecker mc(m);
    for (const auto& f : fs)
      for (StateId s = 0; s < m.state_count(); ++s) {
        ++checks;
        if (mc.holds(s, f) != oracle::holds(m, s, f) && formula_mismatch++ < 5)
          o.details.push_back("formula " + render(f) + " at " + m.state_name(s) + " in\n" + render_model(m));
      }
  });
  o.details.push_back(std::to_string(models) + " enumerated models, " + std::to_string(checks) +
                      " (formula, state) checks of depth <= 2, " + std::to_string(formula_mismatch) + " mismatches");

  std::size_t bisim_models = 0, bisim_mismatch = 0;
  auto compare = [&](const GameModel& m) {
    ++bisim_models;
    const auto fast = greatest_constr_bisim(m);
    const auto slow = oracle::greatest_by_search(m, false);
    for (StateId i = 0; i < m.state_count(); ++i)
      for (StateId j = 0; j < m.state_count(); ++j)
        if (fast.contains(i, j) != bool(slow[i][j])) {
          if (bisim_mismatch++ < 5) o.details.push_back("greatest bisimulation differs on\n" + render_model(m));
          return;
        }
  };
  oracle::for_each_small_model(2, 2, 2, {"p"}, compare);
  RandomFamily fam;
  fam.min_agents = 1;
  fam.max_agents = 2;
  fam.min_states = 3;
  fam.max_states = 4;
  fam.atoms = {"p"};
  for (std::uint64_t i = 0; i < 100; ++i) compare(random_model(fam, derive_seed(kSeed + 6, i)));
  compare(load_model(std::string(CONSTR_FIXTURE_DIR) + "/equivalent_not_bisimilar.cgm"));
  o.details.push_back(std::to_string(bisim_models) + " models with <= 4 states, greatest bisimulation vs search over " +
                      "all relations: " + std::to_string(bisim_mismatch) + " mismatches");

  o.pass = op_mismatch == 0 && formula_mismatch == 0 && bisim_mismatch == 0;
  o.summary = std::to_string(op_checks) + " operator checks, " + std::to_string(checks) + " formula checks and " + std::to_string(bisim_models) +
              " relation searches agree with the reference";
  if (!o.pass) o.summary = "reference disagrees";
  return o;
}

struct Criterion {
  int number;
  const char* title;
  std::function<Outcome()> run;
};

} // namespace
} // namespace constr

int main(int argc, char** argv) {
  using namespace constr;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--only N]\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "fixture verdicts", fixture_verdicts},       {2, "definability identities", definability},
      {3, "axiom and rule schemes", axiom_suite},      {4, "bisimulation invariance", bisim_invariance},
      {5, "distinguishing formulas", distinguishing_pairs}, {6, "reference evaluator", oracle_equivalence}};
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.number != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), {}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.title << "): " << o.summary
              << " [" << timing << "]\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
