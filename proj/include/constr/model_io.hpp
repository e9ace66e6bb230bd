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

#ifndef CONSTR_MODEL_IO_HPP
#define CONSTR_MODEL_IO_HPP

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "game_model.hpp"

namespace constr {

// Model text format (line oriented, '#' starts a comment):
//
//   agents: a b
//   states: s0 s1
//   labels s0: p q          one line per state; absent = no atoms true
//   actions s0 a: a1 a2     one line per (state, agent)
//   go s0 (a1,b1) -> s1     one line per action profile, agents in declared order
//
// `agents:` and `states:` must each appear exactly once and before any line
// that mentions a state. Names are runs of characters other than whitespace
// and ":(),#". Outcome totality is not required here; see validate_model().

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

inline bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != ':' && c != '(' && c != ')' && c != ',' && c != '#';
}

inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ':' || c == '(' || c == ')' || c == ',') {
      out.push_back({std::string(1, c), i + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && is_name_char(line[i])) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

class LineCursor {
public:
  LineCursor(const std::vector<Token>& toks, std::size_t line, std::size_t line_length)
      : toks_(toks), line_(line), eol_column_(line_length + 1) {}

  bool done() const { return pos_ >= toks_.size(); }

  const Token& next_name(const char* what) {
    if (done()) fail("expected " + std::string(what));
    const Token& t = toks_[pos_];
    if (t.text.size() == 1 && !is_name_char(t.text[0])) fail_at(t, "expected " + std::string(what));
    ++pos_;
    return t;
  }

  void expect(const std::string& punct) {
    if (done()) fail("expected '" + punct + "'");
    if (toks_[pos_].text != punct) fail_at(toks_[pos_], "expected '" + punct + "'");
    ++pos_;
  }

  bool peek(const std::string& text) const { return !done() && toks_[pos_].text == text; }

  void expect_end() {
    if (!done()) fail_at(toks_[pos_], "unexpected '" + toks_[pos_].text + "'");
  }

  std::vector<Token> rest_names(const char* what) {
    std::vector<Token> out;
    while (!done()) out.push_back(next_name(what));
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, done() ? eol_column_ : toks_[pos_].column);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& what) const { throw ParseError(what, line_, t.column); }

private:
  const std::vector<Token>& toks_;
  std::size_t line_;
  std::size_t eol_column_;
  std::size_t pos_ = 0;
};

struct RawLine {
  std::size_t number;
  std::size_t length;
  std::vector<Token> tokens;
};

} // namespace detail

/// Parses the model text format. Throws ParseError on syntax errors,
/// unknown names, duplicate declarations and duplicate `go` lines.
inline GameModel parse_model(std::string_view text) {
  using detail::LineCursor;
  std::vector<detail::RawLine> lines;
  {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++number;
      auto toks = detail::tokenize_line(line);
      if (!toks.empty()) lines.push_back({number, line.size(), std::move(toks)});
      start = end + 1;
    }
  }

  std::optional<std::vector<std::string>> agents;
  std::optional<std::vector<std::string>> states;
  std::size_t header_end = 0;
  for (; header_end < lines.size(); ++header_end) {
    const auto& l = lines[header_end];
    const std::string& kw = l.tokens.front().text;
    if (kw != "agents" && kw != "states") break;
    LineCursor cur(l.tokens, l.number, l.length);
    cur.next_name("keyword");
    cur.expect(":");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& t : cur.rest_names(kw == "agents" ? "agent name" : "state name")) {
      if (!seen.insert(t.text).second) cur.fail_at(t, "duplicate name '" + t.text + "'");
      names.push_back(t.text);
    }
    auto& slot = kw == "agents" ? agents : states;
    if (slot) cur.fail_at(l.tokens.front(), "'" + kw + ":' declared twice");
    slot = std::move(names);
  }
  if (!agents || !states) {
    const std::size_t line = header_end < lines.size() ? lines[header_end].number : (lines.empty() ? 1 : lines.back().number);
    throw ParseError(!agents ? "missing 'agents:' declaration" : "missing 'states:' declaration", line, 1);
  }

  GameModel m(*agents, *states);

  auto state_of = [&](LineCursor& cur, const detail::Token& t) {
    if (auto s = m.find_state(t.text)) return *s;
    cur.fail_at(t, "unknown state '" + t.text + "'");
  };

  std::set<StateId> labelled;
  std::set<std::pair<StateId, AgentIndex>> declared;
  std::vector<const detail::RawLine*> go_lines;

  for (std::size_t i = header_end; i < lines.size(); ++i) {
    const auto& l = lines[i];
    LineCursor cur(l.tokens, l.number, l.length);
    const auto& kw = cur.next_name("keyword");
    if (kw.text == "agents" || kw.text == "states") {
      cur.fail_at(kw, "'" + kw.text + ":' must precede all other lines");
    } else if (kw.text == "labels") {
      const StateId s = state_of(cur, cur.next_name("state name"));
      cur.expect(":");
      if (!labelled.insert(s).second) cur.fail_at(kw, "duplicate labels line for state '" + m.state_name(s) + "'");
      for (const auto& t : cur.rest_names("atom")) m.add_label(s, t.text);
    } else if (kw.text == "actions") {
      const StateId s = state_of(cur, cur.next_name("state name"));
      const auto& at = cur.next_name("agent name");
      auto a = m.find_agent(at.text);
      if (!a) cur.fail_at(at, "unknown agent '" + at.text + "'");
      cur.expect(":");
      if (!declared.insert({s, *a}).second)
        cur.fail_at(kw, "duplicate actions line for agent '" + at.text + "' at state '" + m.state_name(s) + "'");
      std::vector<std::string> names;
      for (const auto& t : cur.rest_names("action name")) names.push_back(t.text);
      m.set_actions(s, *a, std::move(names));
    } else if (kw.text == "go") {
      go_lines.push_back(&l);
    } else {
      cur.fail_at(kw, "unknown keyword '" + kw.text + "'");
    }
  }

  // Outcomes last: set_actions() resets the outcome table of its state.
  for (const auto* l : go_lines) {
    LineCursor cur(l->tokens, l->number, l->length);
    cur.next_name("keyword");
    const StateId s = state_of(cur, cur.next_name("state name"));
    cur.expect("(");
    std::vector<std::size_t> profile;
    while (true) {
      const auto& t = cur.next_name("action name");
      const AgentIndex a = profile.size();
      if (a >= m.agent_count()) cur.fail_at(t, "profile has more actions than there are agents");
      auto act = m.find_action(s, a, t.text);
      if (!act)
        cur.fail_at(t, "action '" + t.text + "' is not available to agent '" + m.agent_name(a) + "' at state '" +
                           m.state_name(s) + "'");
      profile.push_back(*act);
      if (cur.peek(",")) {
        cur.expect(",");
        continue;
      }
      cur.expect(")");
      break;
    }
    if (profile.size() != m.agent_count()) cur.fail("profile has fewer actions than there are agents");
    const auto& arrow = cur.next_name("'->'");
    if (arrow.text != "->") cur.fail_at(arrow, "expected '->'");
    const StateId target = state_of(cur, cur.next_name("target state"));
    cur.expect_end();
    if (m.outcome(s, profile) != kNoState)
      cur.fail_at(l->tokens.front(), "duplicate outcome for profile " + profile_text(m, s, profile) + " at state '" +
                                         m.state_name(s) + "'");
    m.set_outcome(s, profile, target);
  }
  return m;
}

/// Canonical text: header, labels in state order, then per state its
/// actions lines and `go` lines in profile order. parse_model() inverts it.
inline std::string render_model(const GameModel& m) {
  std::ostringstream out;
  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += " " + x;
    return s;
  };
  out << "agents:" << join(m.agents()) << "\n";
  out << "states:" << join(m.states()) << "\n";
  for (StateId s = 0; s < m.state_count(); ++s) {
    const auto labels = m.labels(s);
    if (!labels.empty()) out << "labels " << m.state_name(s) << ":" << join(labels) << "\n";
  }
  for (StateId s = 0; s < m.state_count(); ++s) {
    out << "\n";
    for (AgentIndex a = 0; a < m.agent_count(); ++a)
      out << "actions " << m.state_name(s) << " " << m.agent_name(a) << ":" << join(m.actions(s, a)) << "\n";
    const std::size_t n = m.profile_count(s);
    for (std::size_t p = 0; p < n; ++p) {
      const StateId u = m.outcome_at(s, p);
      if (u == kNoState) continue;
      out << "go " << m.state_name(s) << " " << profile_text(m, s, m.decode_profile(s, p)) << " -> "
          << m.state_name(u) << "\n";
    }
  }
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GameModel load_model(const std::string& path) {
  try {
    return parse_model(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.reason(), e.line(), e.column());
  }
}

} // namespace constr

#endif // CONSTR_MODEL_IO_HPP
