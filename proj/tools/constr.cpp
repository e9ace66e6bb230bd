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

// Command-line front end. Exit codes: 0 = every check true or passed,
// 1 = a check was false or failed, 2 = input or usage error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "constr/constr.hpp"

namespace {

using constr::GameModel;
using constr::InputError;
using constr::StateId;
using json = nlohmann::ordered_json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;

GameModel load_valid(const std::string& path) {
  GameModel m = constr::load_model(path);
  constr::require_valid(m);
  return m;
}

json state_names(const GameModel& m, const constr::StateSet& s) {
  json out = json::array();
  s.for_each([&](StateId x) { out.push_back(m.state_name(x)); });
  return out;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("CONSTR_SEED");
  if (env == nullptr || *env == '\0') return constr::kDefaultSeed;
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(env, &used, 0);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(std::string("CONSTR_SEED is not an unsigned integer: '") + env + "'");
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string model, state, formula;
  bool explain = false;
};

int run_check(const CheckArgs& a, bool as_json) {
  const GameModel m = load_valid(a.model);
  const StateId s = m.state(a.state);
  const constr::Formula f = constr::parse_formula(a.formula);
  const bool value = constr::holds(m, s, f);
  std::vector<std::string> why;
  if (a.explain) why = constr::explain(m, s, f);
  if (as_json) {
    json j{{"command", "check"}, {"state", a.state}, {"formula", constr::render(f)}, {"value", value}};
    if (a.explain) j["explanation"] = why;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (value ? "true" : "false") << "\n";
    for (const auto& line : why) std::cout << "  " << line << "\n";
  }
  return value ? kExitTrue : kExitFalse;
}

// ------------------------------------------------------------ extension

int run_extension(const std::string& model, const std::string& formula, bool as_json) {
  const GameModel m = load_valid(model);
  const constr::Formula f = constr::parse_formula(formula);
  const auto ext = constr::extension(m, f);
  const json states = state_names(m, ext.states);
  if (as_json) {
    std::cout << json{{"command", "extension"}, {"formula", constr::render(f)}, {"states", states}}.dump(2) << "\n";
  } else {
    std::vector<std::string> names = states.get<std::vector<std::string>>();
    std::cout << "{" << join(names, ", ") << "}\n";
  }
  return kExitTrue;
}

// ---------------------------------------------------------------- bisim

struct BisimArgs {
  std::string model;
  std::string relation;
  std::string logic = "constr";
  bool greatest = false;
};

json failure_json(const GameModel& m, const constr::BisimFailure& f) {
  json j{{"s1", m.state_name(f.s1)}, {"s2", m.state_name(f.s2)}, {"clause", constr::to_string(f.tag)}};
  if (f.tag == constr::BisimTag::AtomEq) {
    j["atom"] = f.atom;
  } else {
    j["A"] = m.agent_names(f.a);
    j["B"] = m.agent_names(f.b);
    if (f.witness) j["witness"] = constr::to_string(m, *f.witness);
  }
  j["message"] = constr::describe(m, f);
  return j;
}

int run_bisim(const BisimArgs& a, bool as_json) {
  const GameModel m = load_valid(a.model);
  const bool cl = a.logic == "cl";
  if (a.greatest) {
    if (!a.relation.empty()) throw InputError("--greatest takes no relation file");
    const auto r = cl ? constr::greatest_cl_bisim(m) : constr::greatest_constr_bisim(m);
    if (as_json) {
      json pairs = json::array();
      for (auto [s, t] : r.pairs()) pairs.push_back({m.state_name(s), m.state_name(t)});
      std::cout << json{{"command", "bisim"}, {"logic", a.logic}, {"pairs", pairs}}.dump(2) << "\n";
    } else {
      std::cout << constr::render_relation(m, r);
    }
    return kExitTrue;
  }
  if (a.relation.empty()) throw InputError("bisim needs a relation file or --greatest");
  const auto r = constr::load_relation(m, a.relation);
  const auto v = cl ? constr::check_cl_bisim(m, r) : constr::check_constr_bisim(m, r);
  if (as_json) {
    json j{{"command", "bisim"}, {"logic", a.logic}, {"ok", v.ok}};
    if (v.failure) j["failure"] = failure_json(m, *v.failure);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (v.ok ? "ok" : "fail: " + constr::describe(m, *v.failure)) << "\n";
  }
  return v.ok ? kExitTrue : kExitFalse;
}

// ---------------------------------------------------------- distinguish

int run_distinguish(const std::string& model, const std::string& s_name, const std::string& t_name, bool as_json) {
  const GameModel m = load_valid(model);
  const StateId s = m.state(s_name);
  const StateId t = m.state(t_name);
  constr::BisimChecker checker(m);
  const auto greatest = checker.greatest(false);
  const bool bisimilar = greatest.contains(s, t);
  const constr::Distinguisher d(m);
  const auto f = d.distinguish(s, t);
  if (f && (!constr::holds(m, s, *f) || constr::holds(m, t, *f)))
    throw std::logic_error("distinguishing formula failed its own check: " + constr::render(*f));

  std::optional<constr::BisimFailure> why;
  if (!bisimilar) why = checker.check_pair(greatest, s, t, false, constr::kAllFamilies);

  std::string status;
  if (f) status = "distinguished";
  else if (bisimilar) status = "bisimilar";
  else if (d.exhaustive()) status = "logically equivalent but not bisimilar";
  else status = "no distinguishing formula found";

  if (as_json) {
    json j{{"command", "distinguish"}, {"s", s_name}, {"t", t_name}, {"status", status}, {"bisimilar", bisimilar},
           {"formula", f ? json(constr::render(*f)) : json(nullptr)}};
    if (why) j["failure"] = failure_json(m, *why);
    std::cout << j.dump(2) << "\n";
  } else if (f) {
    std::cout << constr::render(*f) << "\n";
  } else {
    std::cout << status << "\n";
    if (why) std::cout << "  " << constr::describe(m, *why) << "\n";
  }
  return f ? kExitTrue : kExitFalse;
}

// ------------------------------------------------------------- validate

struct ValidateArgs {
  std::string config;
  std::vector<std::string> schemes, exclude;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> agents, states, actions, random, budget;
  bool no_exhaustive = false;
  bool no_corpus = false;
  bool stress = false;
  std::string dump;
};

template <class T>
void read_field(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

// Applies a JSON config file; command-line flags are applied afterwards and win.
void apply_config(const std::string& path, constr::SuiteConfig& cfg, bool& corpus) {
  json j;
  try {
    j = json::parse(constr::read_file(path));
    if (!j.is_object()) throw InputError(path + ": config must be a JSON object");
    static const std::vector<std::string> known{"schemes", "exclude", "exhaustive", "random", "seeds",
                                                "budget",  "stress",  "corpus"};
    for (const auto& [key, value] : j.items())
      if (std::find(known.begin(), known.end(), key) == known.end()) throw InputError(path + ": unknown key '" + key + "'");
    read_field(j, "schemes", cfg.include);
    read_field(j, "exclude", cfg.exclude);
    if (j.contains("exhaustive")) {
      const json& e = j.at("exhaustive");
      if (e.is_boolean() || e.is_null()) {
        if (e.is_null() || !e.get<bool>()) cfg.exhaustive.reset();
      } else {
        constr::ExhaustiveFamily fam;
        read_field(e, "agents", fam.agents);
        read_field(e, "max_states", fam.max_states);
        read_field(e, "max_actions", fam.max_actions);
        read_field(e, "atoms", fam.atoms);
        read_field(e, "cap", fam.cap);
        cfg.exhaustive = fam;
      }
    }
    if (j.contains("random")) {
      const json& r = j.at("random");
      read_field(r, "models", cfg.random_models);
      read_field(r, "min_agents", cfg.random.min_agents);
      read_field(r, "max_agents", cfg.random.max_agents);
      read_field(r, "min_states", cfg.random.min_states);
      read_field(r, "max_states", cfg.random.max_states);
      read_field(r, "min_actions", cfg.random.min_actions);
      read_field(r, "max_actions", cfg.random.max_actions);
      read_field(r, "atoms", cfg.random.atoms);
    }
    read_field(j, "seeds", cfg.seeds);
    if (j.contains("budget")) cfg.budget = j.at("budget").get<std::size_t>();
    read_field(j, "stress", cfg.stress);
    read_field(j, "corpus", corpus);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

json counterexample_json(const constr::Counterexample& cx) {
  json premises = json::array();
  for (const auto& p : cx.instance.premises) premises.push_back(constr::render(p.formula()));
  return {{"source", cx.source},
          {"state", cx.model.state_name(cx.state)},
          {"premises", premises},
          {"conclusion", constr::render(cx.instance.conclusion.formula())},
          {"verified", constr::verify_counterexample(cx)},
          {"model", constr::render_model(cx.model)}};
}

std::string counterexample_file(const constr::Counterexample& cx) {
  std::string out = "# Counterexample to " + cx.scheme + " from " + cx.source + "\n";
  out += "# fails at " + cx.model.state_name(cx.state) + ": " + constr::render(cx.instance.conclusion.formula()) + "\n";
  for (const auto& p : cx.instance.premises) out += "# premise valid in the model: " + constr::render(p.formula()) + "\n";
  return out + constr::render_model(cx.model);
}

int run_validate(const ValidateArgs& a, bool as_json) {
  constr::SuiteConfig cfg;
  cfg.seeds = {default_seed()};
  bool corpus = true;
  if (!a.config.empty()) apply_config(a.config, cfg, corpus);
  if (!a.schemes.empty()) cfg.include = a.schemes;
  if (!a.exclude.empty()) cfg.exclude = a.exclude;
  if (!a.seeds.empty()) cfg.seeds = a.seeds;
  if (a.random) cfg.random_models = *a.random;
  if (a.budget) cfg.budget = a.budget;
  if (a.stress) cfg.stress = true;
  if (a.no_corpus) corpus = false;
  if (a.no_exhaustive) {
    cfg.exhaustive.reset();
  } else if (a.agents || a.states || a.actions) {
    if (!cfg.exhaustive) cfg.exhaustive = constr::ExhaustiveFamily{};
    if (a.agents) cfg.exhaustive->agents = *a.agents;
    if (a.states) cfg.exhaustive->max_states = *a.states;
    if (a.actions) cfg.exhaustive->max_actions = *a.actions;
  }

  std::vector<constr::SourcedModel> fixed;
  if (corpus)
    for (const auto& fx : constr::corpus_fixtures()) fixed.push_back({"corpus " + fx.name, fx.model()});

  const auto report = constr::run_suite(cfg, fixed);

  if (!a.dump.empty()) {
    std::filesystem::create_directories(a.dump);
    for (const auto& v : report.verdicts)
      if (v.counterexample) {
        std::ofstream out(std::filesystem::path(a.dump) / (v.id + ".cgm"));
        if (!out) throw InputError("cannot write into '" + a.dump + "'");
        out << counterexample_file(*v.counterexample);
      }
  }

  if (as_json) {
    json schemes = json::array();
    for (const auto& v : report.verdicts) {
      json j{{"id", v.id},
             {"expected_valid", v.expected_valid},
             {"passed", v.passed()},
             {"models_tried", v.models_tried},
             {"instances", v.instances}};
      j["counterexample"] = v.counterexample ? counterexample_json(*v.counterexample) : json(nullptr);
      schemes.push_back(std::move(j));
    }
    std::cout << json{{"command", "validate"}, {"ok", report.ok()}, {"models", report.models}, {"schemes", schemes}}.dump(2)
              << "\n";
  } else {
    for (const auto& v : report.verdicts) {
      std::cout << (v.passed() ? "PASS " : "FAIL ") << v.id << (v.expected_valid ? " (valid)" : " (invalid)")
                << " models=" << v.models_tried << " instances=" << v.instances << "\n";
      if (!v.counterexample) {
        if (!v.expected_valid) std::cout << "  no counterexample found within the search\n";
        continue;
      }
      const auto& cx = *v.counterexample;
      std::cout << "  counterexample from " << cx.source << " at " << cx.model.state_name(cx.state) << ": "
                << constr::render(cx.instance.conclusion.formula())
                << (constr::verify_counterexample(cx) ? " (verified)" : " (NOT verified)") << "\n";
      std::istringstream text(counterexample_file(cx));
      for (std::string line; std::getline(text, line);) std::cout << "    " << line << "\n";
    }
    std::cout << (report.ok() ? "ok" : "failed") << ": " << report.verdicts.size() << " schemes, " << report.models
              << " models\n";
  }
  return report.ok() ? kExitTrue : kExitFalse;
}

// --------------------------------------------------------------- corpus

int run_corpus_command(const std::string& write_dir, bool as_json) {
  const auto report = constr::run_corpus();
  if (!write_dir.empty()) {
    std::filesystem::create_directories(write_dir);
    for (const auto& fx : constr::corpus_fixtures()) {
      std::ofstream out(std::filesystem::path(write_dir) / (fx.name + ".cgm"));
      if (!out) throw InputError("cannot write into '" + write_dir + "'");
      out << fx.model_text;
      if (fx.relation) std::ofstream(std::filesystem::path(write_dir) / (fx.name + ".rel")) << fx.relation->text;
    }
  }
  if (as_json) {
    json results = json::array();
    for (const auto& r : report.results)
      results.push_back({{"fixture", r.fixture},
                         {"check", r.check},
                         {"expected", r.expected},
                         {"actual", r.actual},
                         {"passed", r.passed()},
                         {"detail", r.detail}});
    std::cout << json{{"command", "corpus"}, {"ok", report.ok()}, {"results", results}}.dump(2) << "\n";
  } else {
    for (const auto& r : report.results) {
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.fixture << ": " << r.check << " expected "
                << (r.expected ? "true" : "false");
      if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
      std::cout << "\n";
    }
    std::cout << (report.ok() ? "ok" : "failed") << ": " << report.results.size() - report.failures() << "/"
              << report.results.size() << " checks\n";
  }
  return report.ok() ? kExitTrue : kExitFalse;
}

// ------------------------------------------------------------------ fmt

int run_fmt(const std::string& path, const std::string& output, bool check, bool as_json) {
  const std::string original = constr::read_file(path);
  std::string text;
  try {
    text = constr::render_model(constr::parse_model(original));
  } catch (const constr::ParseError& e) {
    throw constr::ParseError(path + ": " + e.reason(), e.line(), e.column());
  }
  const bool canonical = text == original;
  if (!output.empty()) {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw InputError("cannot write '" + output + "'");
    out << text;
  }
  if (as_json) {
    std::cout << json{{"command", "fmt"}, {"canonical", canonical}, {"text", text}}.dump(2) << "\n";
  } else if (output.empty() && !check) {
    std::cout << text;
  }
  return check && !canonical ? kExitFalse : kExitTrue;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"ConStR toolkit: model checking, bisimulation and validity testing for conditional strategic reasoning"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit structured JSON instead of text");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Evaluate a formula at a state");
  check->add_option("model", ca.model, "Model file")->required();
  check->add_option("state", ca.state, "State name")->required();
  check->add_option("formula", ca.formula, "Formula text")->required();
  check->add_flag("--explain", ca.explain, "Show witness or counter joint actions for the outermost operator");

  std::string ext_model, ext_formula;
  auto* extension = app.add_subcommand("extension", "List the states where a formula holds");
  extension->add_option("model", ext_model, "Model file")->required();
  extension->add_option("formula", ext_formula, "Formula text")->required();

  BisimArgs ba;
  auto* bisim = app.add_subcommand("bisim", "Check a relation, or compute the greatest bisimulation");
  bisim->add_option("model", ba.model, "Model file")->required();
  bisim->add_option("relation", ba.relation, "Relation file (s ~ t per line)");
  bisim->add_option("--logic", ba.logic, "Bisimulation notion")->check(CLI::IsMember({"cl", "constr"}));
  bisim->add_flag("--greatest", ba.greatest, "Print the greatest bisimulation");

  std::string d_model, d_s, d_t;
  auto* distinguish = app.add_subcommand("distinguish", "Find a formula true at s and false at t");
  distinguish->add_option("model", d_model, "Model file")->required();
  distinguish->add_option("s", d_s, "First state")->required();
  distinguish->add_option("t", d_t, "Second state")->required();

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Search for counterexamples to the axiom and rule schemes");
  validate->add_option("--config", va.config, "JSON config file; flags override it");
  validate->add_option("--schemes", va.schemes, "Only these scheme ids")->delimiter(',');
  validate->add_option("--exclude", va.exclude, "Skip these scheme ids")->delimiter(',');
  validate->add_option("--seeds", va.seeds, "Random seeds (default: CONSTR_SEED or built-in)")->delimiter(',');
  validate->add_option("--agents", va.agents, "Exhaustive family: agent count");
  validate->add_option("--states", va.states, "Exhaustive family: maximum states");
  validate->add_option("--actions", va.actions, "Exhaustive family: maximum actions per agent");
  validate->add_option("--random", va.random, "Random models per seed");
  validate->add_option("--budget", va.budget, "Maximum models examined per scheme");
  validate->add_flag("--no-exhaustive", va.no_exhaustive, "Skip the exhaustive family");
  validate->add_flag("--no-corpus", va.no_corpus, "Skip the corpus models");
  validate->add_flag("--stress", va.stress, "Larger formula pool for metavariables");
  validate->add_option("--dump", va.dump, "Write each counterexample model into this directory");

  std::string corpus_dir;
  auto* corpus = app.add_subcommand("corpus", "Run every fixture check");
  corpus->add_option("--write", corpus_dir, "Also write every fixture model and relation into this directory");

  std::string fmt_path, fmt_out;
  bool fmt_check = false;
  auto* fmt = app.add_subcommand("fmt", "Print a model file in canonical form");
  fmt->add_option("model", fmt_path, "Model file")->required();
  fmt->add_option("-o,--output", fmt_out, "Write here instead of standard output");
  fmt->add_flag("--check", fmt_check, "Exit 1 if the file is not already canonical");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitTrue : kExitInput;
  }

  try {
    if (*check) return run_check(ca, as_json);
    if (*extension) return run_extension(ext_model, ext_formula, as_json);
    if (*bisim) return run_bisim(ba, as_json);
    if (*distinguish) return run_distinguish(d_model, d_s, d_t, as_json);
    if (*validate) return run_validate(va, as_json);
    if (*corpus) return run_corpus_command(corpus_dir, as_json);
    if (*fmt) return run_fmt(fmt_path, fmt_out, fmt_check, as_json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
