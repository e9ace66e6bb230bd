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

#ifndef CONSTR_COALITION_HPP
#define CONSTR_COALITION_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace constr {

using AgentIndex = std::size_t;

/// A set of agents of one model, indexed by declaration position.
class Coalition {
public:
  static constexpr std::size_t kMaxAgents = 32;

  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint32_t mask) : mask_(mask) {}

  static constexpr Coalition empty() { return Coalition{}; }
  static constexpr Coalition grand(std::size_t agents) {
    return Coalition(agents >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << agents) - 1));
  }
  static constexpr Coalition single(AgentIndex a) { return Coalition(std::uint32_t{1} << a); }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool contains(AgentIndex a) const { return ((mask_ >> a) & 1U) != 0; }
  constexpr bool is_empty() const { return mask_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool is_subset_of(Coalition o) const { return (mask_ & ~o.mask_) == 0; }

  std::vector<AgentIndex> members() const {
    std::vector<AgentIndex> out;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<AgentIndex>(std::countr_zero(m)));
    return out;
  }

  friend constexpr Coalition operator|(Coalition a, Coalition b) { return Coalition(a.mask_ | b.mask_); }
  friend constexpr Coalition operator&(Coalition a, Coalition b) { return Coalition(a.mask_ & b.mask_); }
  friend constexpr Coalition operator-(Coalition a, Coalition b) { return Coalition(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(Coalition, Coalition) = default;
  friend constexpr auto operator<=>(Coalition, Coalition) = default;

private:
  std::uint32_t mask_ = 0;
};

/// All coalitions over `agents` agents, in increasing mask order.
inline std::vector<Coalition> all_coalitions(std::size_t agents) {
  std::vector<Coalition> out;
  const std::uint32_t top = Coalition::grand(agents).mask();
  for (std::uint64_t m = 0; m <= top; ++m) out.emplace_back(static_cast<std::uint32_t>(m));
  return out;
}

} // namespace constr

#endif // CONSTR_COALITION_HPP
