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

#ifndef CONSTR_BISIM_HPP
#define CONSTR_BISIM_HPP

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "game_model.hpp"
#include "model_io.hpp"
#include "outcome_index.hpp"

namespace constr {

/// A set of ordered state pairs over one model, stored as adjacency rows.
class StateRelation {
public:
  explicit StateRelation(std::size_t states = 0) : rows_(states, StateSet(states)) {}

  static StateRelation identity(std::size_t states) {
    StateRelation r(states);
    for (StateId s = 0; s < states; ++s) r.insert(s, s);
    return r;
  }

  std::size_t universe() const { return rows_.size(); }
  bool contains(StateId s, StateId t) const { return s < rows_.size() && rows_[s].contains(t); }
  void insert(StateId s, StateId t) { rows_.at(s).insert(t); }
  void erase(StateId s, StateId t) { rows_.at(s).erase(t); }
  const StateSet& image(StateId s) const { return rows_.at(s); }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
  }

  /// Pairs in lexicographic order.
  std::vector<std::pair<StateId, StateId>> pairs() const {
    std::vector<std::pair<StateId, StateId>> out;
    for (StateId s = 0; s < rows_.size(); ++s) rows_[s].for_each([&](StateId t) { out.emplace_back(s, t); });
    return out;
  }

  StateRelation converse() const {
    StateRelation r(rows_.size());
    for (auto [s, t] : pairs()) r.insert(t, s);
    return r;
  }

  bool is_subset_of(const StateRelation& o) const {
    for (StateId s = 0; s < rows_.size(); ++s)
      if (!rows_[s].is_subset_of(o.rows_.at(s))) return false;
    return true;
  }

  friend bool operator==(const StateRelation&, const StateRelation&) = default;

private:
  std::vector<StateSet> rows_;
};

/// Relation text: one `s ~ t` pair per line, `#` comments.
inline StateRelation parse_relation(const GameModel& m, std::string_view text) {
  StateRelation r(m.state_count());
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::pair<std::string, std::size_t>> words;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      words.emplace_back(std::string(line.substr(i, j - i)), i + 1);
      i = j;
    }
    if (words.empty()) continue;
    if (words.size() != 3 || words[1].first != "~")
      throw ParseError("expected 's ~ t'", number, words.front().second);
    StateId ends[2];
    for (int k = 0; k < 2; ++k) {
      const auto& [name, col] = words[k * 2];
      auto s = m.find_state(name);
      if (!s) throw ParseError("unknown state '" + name + "'", number, col);
      ends[k] = *s;
    }
    r.insert(ends[0], ends[1]);
  }
  return r;
}

inline std::string render_relation(const GameModel& m, const StateRelation& r) {
  std::string out;
  for (auto [s, t] : r.pairs()) out += m.state_name(s) + " ~ " + m.state_name(t) + "\n";
  return out;
}

inline StateRelation load_relation(const GameModel& m, const std::string& path) {
  try {
    return parse_relation(m, read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.reason(), e.line(), e.column());
  }
}

/// Places two models over the same agents side by side. State names get
/// the given prefixes so they stay unique.
inline GameModel disjoint_union(const GameModel& m1, const GameModel& m2, const std::string& prefix1,
                                const std::string& prefix2) {
  if (m1.agents() != m2.agents()) throw InputError("disjoint union needs identical agent lists");
  std::vector<std::string> names;
  for (const auto& s : m1.states()) names.push_back(prefix1 + s);
  for (const auto& s : m2.states()) names.push_back(prefix2 + s);
  GameModel u(m1.agents(), names);
  const std::size_t offset = m1.state_count();
  auto copy = [&](const GameModel& src, std::size_t base) {
    for (StateId s = 0; s < src.state_count(); ++s) {
      for (AgentIndex a = 0; a < src.agent_count(); ++a) u.set_actions(base + s, a, src.actions(s, a));
      for (std::size_t p = 0; p < src.profile_count(s); ++p) {
        const StateId t = src.outcome_at(s, p);
        u.set_outcome_at(base + s, p, t == kNoState ? kNoState : base + t);
      }
      for (const auto& atom : src.labels(s)) u.add_label(base + s, atom);
    }
  };
  copy(m1, 0);
  copy(m2, offset);
  return u;
}

/// Which clause of a bisimulation failed.
enum class BisimTag { AtomEq, Forth, Back, AForthC, ABackC, BForthAlpha, BBackAlpha, AForthBeta, ABackBeta };

inline const char* to_string(BisimTag t) {
  switch (t) {
  case BisimTag::AtomEq: return "AtomEq";
  case BisimTag::Forth: return "Forth";
  case BisimTag::Back: return "Back";
  case BisimTag::AForthC: return "A-Forth_c";
  case BisimTag::ABackC: return "A-Back_c";
  case BisimTag::BForthAlpha: return "B-Forth_alpha";
  case BisimTag::BBackAlpha: return "B-Back_alpha";
  case BisimTag::AForthBeta: return "A-Forth_beta";
  case BisimTag::ABackBeta: return "A-Back_beta";
  }
  return "?";
}

/// Condition families of the ConStR bisimulation, combinable as a mask.
enum Family : unsigned { kFamilyC = 1U, kFamilyAlpha = 2U, kFamilyBeta = 4U, kAllFamilies = 7U };

struct BisimFailure {
  StateId s1 = kNoState;
  StateId s2 = kNoState;
  BisimTag tag = BisimTag::AtomEq;
  Coalition a;
  Coalition b;
  /// The universally quantified joint action that has no match, at the state
  /// it belongs to (s1 for Forth tags, s2 for Back tags).
  std::optional<JointAction> witness;
  std::string atom;  // AtomEq only
};

struct BisimVerdict {
  bool ok = true;
  std::optional<BisimFailure> failure;
};

/// One-line description of a failure in model names.
inline std::string describe(const GameModel& m, const BisimFailure& f) {
  std::ostringstream out;
  out << "(" << m.state_name(f.s1) << ", " << m.state_name(f.s2) << ") fails " << to_string(f.tag);
  if (f.tag == BisimTag::AtomEq) {
    out << " on atom '" << f.atom << "'";
    return out.str();
  }
  auto coal = [&](Coalition c) {
    std::string s = "{";
    const auto names = m.agent_names(c);
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
    return s + "}";
  };
  if (f.tag == BisimTag::Forth || f.tag == BisimTag::Back)
    out << " for C=" << coal(f.a);
  else
    out << " for A=" << coal(f.a) << " B=" << coal(f.b);
  if (f.witness) out << ": unmatched " << to_string(m, *f.witness) << " at " << m.state_name(f.witness->state);
  return out.str();
}

namespace detail {

// Checks the forth halves of the clauses for (s1, s2). The back halves are
// the same checks on (s2, s1) with the relation transposed, which keeps the
// orientation u1 R u2 of every local condition.
class ClauseChecker {
public:
  ClauseChecker(const OutcomeIndex& idx, const std::vector<StateSet>& rows, const std::vector<StateSet>& cols,
                StateId s1, StateId s2)
      : idx_(idx), rows_(rows), cols_(cols), s1_(s1), s2_(s2), n_(idx.model().state_count()),
        img_(std::size_t{1} << idx.model().agent_count()), pre_(img_.size()) {}

  // CL Forth for C: every sigma1 has a sigma2 with Out2 ⊆ R[Out1].
  std::optional<std::size_t> cl(Coalition c) {
    const auto& o2 = idx_.outs(s2_, c);
    const auto& img1 = images(c);
    for (std::size_t j1 = 0; j1 < img1.size(); ++j1) {
      bool found = false;
      for (std::size_t j2 = 0; j2 < o2.size() && !found; ++j2) found = o2[j2].is_subset_of(img1[j1]);
      if (!found) return j1;
    }
    return std::nullopt;
  }

  // A-Forth_c. Returns the unmatched sigma1_A.
  std::optional<std::size_t> oc(Coalition a, Coalition b) {
    const Coalition u = a | b;
    const auto& o2a = idx_.outs(s2_, a);
    const auto& o2u = idx_.outs(s2_, u);
    const auto& img1a = images(a);
    const auto& img1u = images(u);
    const auto& m1 = idx_.merge_table(s1_, a, b);
    const auto& m2 = idx_.merge_table(s2_, a, b);
    const std::size_t nb1 = idx_.joint_count(s1_, b);
    const std::size_t nb2 = idx_.joint_count(s2_, b);
    for (std::size_t j1a = 0; j1a < img1a.size(); ++j1a) {
      bool found = false;
      for (std::size_t j2a = 0; j2a < o2a.size() && !found; ++j2a) {
        if (!o2a[j2a].is_subset_of(img1a[j1a])) continue;
        bool all_b = true;
        for (std::size_t j1b = 0; j1b < nb1 && all_b; ++j1b) {
          const StateSet& target = img1u[m1[j1a * nb1 + j1b]];
          bool some = false;
          for (std::size_t j2b = 0; j2b < nb2 && !some; ++j2b) some = o2u[m2[j2a * nb2 + j2b]].is_subset_of(target);
          all_b = some;
        }
        found = all_b;
      }
      if (!found) return j1a;
    }
    return std::nullopt;
  }

  // B-Forth_alpha. Returns the unmatched sigma1_B.
  std::optional<std::size_t> alpha(Coalition a, Coalition b) {
    const Coalition u = a | b;
    const auto& o1a = idx_.outs(s1_, a);
    const auto& o2u = idx_.outs(s2_, u);
    const auto& pre2a = preimages(a);
    const auto& img1u = images(u);
    const auto& m1 = idx_.merge_table(s1_, a, b);
    const auto& m2 = idx_.merge_table(s2_, a, b);
    const std::size_t nb1 = idx_.joint_count(s1_, b);
    const std::size_t nb2 = idx_.joint_count(s2_, b);
    for (std::size_t j1b = 0; j1b < nb1; ++j1b) {
      bool found = false;
      for (std::size_t j2b = 0; j2b < nb2 && !found; ++j2b) {
        bool all_a = true;
        for (std::size_t j2a = 0; j2a < pre2a.size() && all_a; ++j2a) {
          const StateSet& out2 = o2u[m2[j2a * nb2 + j2b]];
          bool some = false;
          for (std::size_t j1a = 0; j1a < o1a.size() && !some; ++j1a)
            some = o1a[j1a].is_subset_of(pre2a[j2a]) && out2.is_subset_of(img1u[m1[j1a * nb1 + j1b]]);
          all_a = some;
        }
        found = all_a;
      }
      if (!found) return j1b;
    }
    return std::nullopt;
  }

  // A-Forth_beta. Returns the unmatched sigma1_A.
  std::optional<std::size_t> beta(Coalition a, Coalition b) {
    const Coalition u = a | b;
    const auto& o2a = idx_.outs(s2_, a);
    const auto& o1u = idx_.outs(s1_, u);
    const auto& img1a = images(a);
    const auto& pre2u = preimages(u);
    const auto& m1 = idx_.merge_table(s1_, a, b);
    const auto& m2 = idx_.merge_table(s2_, a, b);
    const std::size_t nb1 = idx_.joint_count(s1_, b);
    const std::size_t nb2 = idx_.joint_count(s2_, b);
    for (std::size_t j1a = 0; j1a < img1a.size(); ++j1a) {
      bool found = false;
      for (std::size_t j2a = 0; j2a < o2a.size() && !found; ++j2a) {
        if (!o2a[j2a].is_subset_of(img1a[j1a])) continue;
        bool all_b = true;
        for (std::size_t j2b = 0; j2b < nb2 && all_b; ++j2b) {
          const StateSet& target = pre2u[m2[j2a * nb2 + j2b]];
          bool some = false;
          for (std::size_t j1b = 0; j1b < nb1 && !some; ++j1b) some = o1u[m1[j1a * nb1 + j1b]].is_subset_of(target);
          all_b = some;
        }
        found = all_b;
      }
      if (!found) return j1a;
    }
    return std::nullopt;
  }

private:
  // R-images of Out[s1, sigma] for every joint action of c at s1.
  const std::vector<StateSet>& images(Coalition c) { return cached(img_, s1_, c, rows_); }
  // R-preimages of Out[s2, sigma] for every joint action of c at s2.
  const std::vector<StateSet>& preimages(Coalition c) { return cached(pre_, s2_, c, cols_); }

  // Slots are indexed by coalition mask and never move once filled.
  const std::vector<StateSet>& cached(std::vector<std::optional<std::vector<StateSet>>>& cache, StateId s, Coalition c,
                                      const std::vector<StateSet>& adj) {
    auto& slot = cache[c.mask()];
    if (slot) return *slot;
    std::vector<StateSet> sets;
    for (const auto& out : idx_.outs(s, c)) {
      StateSet acc(n_);
      out.for_each([&](StateId x) { acc |= adj[x]; });
      sets.push_back(std::move(acc));
    }
    slot = std::move(sets);
    return *slot;
  }

  const OutcomeIndex& idx_;
  const std::vector<StateSet>& rows_;
  const std::vector<StateSet>& cols_;
  StateId s1_;
  StateId s2_;
  std::size_t n_;
  std::vector<std::optional<std::vector<StateSet>>> img_;
  std::vector<std::optional<std::vector<StateSet>>> pre_;
};

} // namespace detail

/// Clause checks against a fixed model; the relation is supplied per call.
class BisimChecker {
public:
  explicit BisimChecker(const GameModel& m) : model_(&m), index_(m) {
    for (StateId s = 0; s < m.state_count(); ++s) labels_.push_back(m.labels(s));
  }

  const GameModel& model() const { return *model_; }

  /// First violated clause at (s1, s2), or nothing. `cl` selects the CL
  /// conditions, otherwise `families` selects ConStR condition families.
  std::optional<BisimFailure> check_pair(const StateRelation& r, StateId s1, StateId s2, bool cl,
                                         unsigned families = kAllFamilies) {
    if (labels_[s1] != labels_[s2]) {
      BisimFailure f{s1, s2, BisimTag::AtomEq, {}, {}, std::nullopt, first_difference(s1, s2)};
      return f;
    }
    sync(r);
    detail::ClauseChecker forth(index_, rows_, cols_, s1, s2);
    detail::ClauseChecker back(index_, cols_, rows_, s2, s1);
    const auto coalitions = all_coalitions(model_->agent_count());
    auto fail = [&](BisimTag tag, Coalition a, Coalition b, StateId at, Coalition quantified, std::size_t j) {
      return BisimFailure{s1, s2, tag, a, b, index_.joint_action(at, quantified, j), {}};
    };
    if (cl) {
      for (Coalition c : coalitions) {
        if (auto j = forth.cl(c)) return fail(BisimTag::Forth, c, {}, s1, c, *j);
        if (auto j = back.cl(c)) return fail(BisimTag::Back, c, {}, s2, c, *j);
      }
      return std::nullopt;
    }
    if (families & kFamilyC)
      for (Coalition a : coalitions)
        for (Coalition b : coalitions) {
          if (auto j = forth.oc(a, b)) return fail(BisimTag::AForthC, a, b, s1, a, *j);
          if (auto j = back.oc(a, b)) return fail(BisimTag::ABackC, a, b, s2, a, *j);
        }
    if (families & kFamilyAlpha)
      for (Coalition a : coalitions)
        for (Coalition b : coalitions) {
          if (auto j = forth.alpha(a, b)) return fail(BisimTag::BForthAlpha, a, b, s1, b, *j);
          if (auto j = back.alpha(a, b)) return fail(BisimTag::BBackAlpha, a, b, s2, b, *j);
        }
    if (families & kFamilyBeta)
      for (Coalition a : coalitions)
        for (Coalition b : coalitions) {
          if (auto j = forth.beta(a, b)) return fail(BisimTag::AForthBeta, a, b, s1, a, *j);
          if (auto j = back.beta(a, b)) return fail(BisimTag::ABackBeta, a, b, s2, a, *j);
        }
    return std::nullopt;
  }

  BisimVerdict check(const StateRelation& r, bool cl, unsigned families = kAllFamilies) {
    require_universe(r);
    for (auto [s1, s2] : r.pairs())
      if (auto f = check_pair(r, s1, s2, cl, families)) return {false, f};
    return {true, std::nullopt};
  }

  /// Greatest fixpoint: start from atom-equivalent pairs and delete every
  /// violating pair against the current relation until nothing changes.
  /// Each round tests all pairs against the same snapshot.
  StateRelation greatest(bool cl, unsigned families = kAllFamilies) {
    const std::size_t n = model_->state_count();
    StateRelation r(n);
    for (StateId s = 0; s < n; ++s)
      for (StateId t = 0; t < n; ++t)
        if (labels_[s] == labels_[t]) r.insert(s, t);
    while (true) {
      std::vector<std::pair<StateId, StateId>> doomed;
      for (auto [s, t] : r.pairs())
        if (check_pair(r, s, t, cl, families)) doomed.emplace_back(s, t);
      if (doomed.empty()) return r;
      for (auto [s, t] : doomed) r.erase(s, t);
    }
  }

private:
  void require_universe(const StateRelation& r) const {
    if (r.universe() != model_->state_count()) throw InputError("relation and model have different state counts");
  }

  void sync(const StateRelation& r) {
    require_universe(r);
    if (synced_ && r == snapshot_) return;
    const std::size_t n = model_->state_count();
    rows_.assign(n, StateSet(n));
    cols_.assign(n, StateSet(n));
    for (auto [s, t] : r.pairs()) {
      rows_[s].insert(t);
      cols_[t].insert(s);
    }
    snapshot_ = r;
    synced_ = true;
  }

  std::string first_difference(StateId s1, StateId s2) const {
    for (const auto& atom : model_->atoms())
      if (model_->valuation(atom).contains(s1) != model_->valuation(atom).contains(s2)) return atom;
    return {};
  }

  const GameModel* model_;
  OutcomeIndex index_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<StateSet> rows_;
  std::vector<StateSet> cols_;
  StateRelation snapshot_;
  bool synced_ = false;
};

inline BisimVerdict check_cl_bisim(const GameModel& m, const StateRelation& r) {
  return BisimChecker(m).check(r, true);
}

inline BisimVerdict check_constr_bisim(const GameModel& m, const StateRelation& r, unsigned families = kAllFamilies) {
  return BisimChecker(m).check(r, false, families);
}

inline StateRelation greatest_cl_bisim(const GameModel& m) { return BisimChecker(m).greatest(true); }

inline StateRelation greatest_constr_bisim(const GameModel& m, unsigned families = kAllFamilies) {
  return BisimChecker(m).greatest(false, families);
}

} // namespace constr

#endif // CONSTR_BISIM_HPP
