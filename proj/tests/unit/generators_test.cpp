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

#include <set>

#include "constr/generators.hpp"
#include "constr/model_io.hpp"

namespace constr {
namespace {

TEST(Enumerate, SingleStateOneAtom) {
  const auto ms = enumerate_models({1, 1, 1, {"p"}});
  ASSERT_EQ(ms.size(), 2U);
  EXPECT_NE(ms[0].valuation("p"), ms[1].valuation("p"));
}

TEST(Enumerate, TwoStatesNoAtoms) {
  EXPECT_EQ(count_models({1, 2, 1, {}}), 4U);
  const auto ms = enumerate_models({1, 2, 1, {}});
  ASSERT_EQ(ms.size(), 4U);
  std::set<std::string> distinct;
  for (const auto& m : ms) distinct.insert(render_model(m));
  EXPECT_EQ(distinct.size(), 4U);
}

TEST(Enumerate, CountMatchesFormulaAndStream) {
  const GeneratorBounds b{2, 2, 2, {"p", "q"}};
  EXPECT_EQ(count_models(b), 16U * 16U * 4U * 4U);
  ModelEnumerator e(b, 1'000'000);
  GameModel m;
  std::uint64_t n = 0;
  std::size_t sampled = 0;
  std::set<std::string> distinct;
  while (e.next(m)) {
    ++n;
    EXPECT_TRUE(is_valid(m));
    if (n % 97 == 0) {
      ++sampled;
      distinct.insert(render_model(m));
    }
  }
  EXPECT_EQ(n, e.count());
  EXPECT_EQ(distinct.size(), sampled);
}

TEST(Enumerate, RefusesAboveCapWithCount) {
  try {
    ModelEnumerator e({3, 3, 2, {"p"}}, 1000);
    FAIL();
  } catch (const InputError& err) {
    EXPECT_NE(std::string(err.what()).find("models"), std::string::npos);
  }
  EXPECT_THROW(enumerate_models({0, 1, 1, {}}), InputError);
}

TEST(RandomModel, DeterministicInSeed) {
  const GeneratorBounds b{3, 4, 2, {"p", "q"}};
  EXPECT_EQ(render_model(random_model(b, 7)), render_model(random_model(b, 7)));
  std::set<std::string> seen;
  for (std::uint64_t s = 0; s < 100; ++s) seen.insert(render_model(random_model(b, s)));
  EXPECT_GT(seen.size(), 95U);
}

TEST(RandomModel, FamilySamplesAreValidAndVaried) {
  RandomFamily f;
  std::set<std::size_t> agent_counts, state_counts;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const GameModel m = random_model(f, derive_seed(1, s));
    EXPECT_TRUE(is_valid(m));
    agent_counts.insert(m.agent_count());
    state_counts.insert(m.state_count());
    EXPECT_EQ(render_model(m), render_model(random_model(f, derive_seed(1, s))));
  }
  EXPECT_EQ(agent_counts, (std::set<std::size_t>{2, 3}));
  EXPECT_EQ(state_counts, (std::set<std::size_t>{1, 2, 3, 4}));
}

TEST(RandomModel, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(5, i));
  EXPECT_EQ(seeds.size(), 1000U);
  EXPECT_NE(derive_seed(5, 0), derive_seed(6, 0));
}

} // namespace
} // namespace constr
