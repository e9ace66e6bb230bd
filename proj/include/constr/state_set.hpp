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

#ifndef CONSTR_STATE_SET_HPP
#define CONSTR_STATE_SET_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <vector>

namespace constr {

using StateId = std::size_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// A subset of the states of one model, stored as a bitset over a fixed
/// universe {0, ..., universe()-1}. Sets over different universes never
/// compare equal.
class StateSet {
public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}

  static StateSet full(std::size_t universe) {
    StateSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static StateSet singleton(std::size_t universe, StateId x) {
    StateSet s(universe);
    s.insert(x);
    return s;
  }

  std::size_t universe() const { return n_; }

  bool contains(StateId x) const {
    return x < n_ && ((words_[x / 64] >> (x % 64)) & 1U) != 0;
  }

  void insert(StateId x) {
    assert(x < n_);
    words_[x / 64] |= std::uint64_t{1} << (x % 64);
  }

  void erase(StateId x) {
    assert(x < n_);
    words_[x / 64] &= ~(std::uint64_t{1} << (x % 64));
  }

  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool is_subset_of(const StateSet& other) const {
    assert(n_ == other.n_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }

  bool intersects(const StateSet& other) const {
    assert(n_ == other.n_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  StateSet& operator|=(const StateSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  StateSet& operator-=(const StateSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  StateSet complement() const {
    StateSet c(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    c.trim();
    return c;
  }

  /// Smallest member, or kNoState when empty.
  StateId first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return kNoState;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<StateId> to_vector() const {
    std::vector<StateId> out;
    for_each([&](StateId x) { out.push_back(x); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::size_t>{}(n_);
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  friend bool operator==(const StateSet&, const StateSet&) = default;

private:
  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Prints member indices as `{0,2}`.
inline std::ostream& operator<<(std::ostream& os, const StateSet& s) {
  os << '{';
  bool first = true;
  s.for_each([&](StateId x) {
    if (!first) os << ',';
    first = false;
    os << x;
  });
  return os << '}';
}

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

} // namespace constr

#endif // CONSTR_STATE_SET_HPP
