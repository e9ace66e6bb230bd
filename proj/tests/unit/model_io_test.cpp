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

#include "constr/model_io.hpp"
#include "unit/test_support.hpp"

namespace constr {
namespace {

using testing::corpus_model;
using testing::corpus_path;

constexpr const char* kTiny = R"(# two agents, one state
agents: a b
states: s0 s1
labels s1: p
actions s0 a: x y
actions s0 b: z
actions s1 a: x
actions s1 b: z
go s0 (x,z) -> s1   # trailing comment
go s0 (y,z) -> s0
go s1 (x,z) -> s1
)";

ParseError parse_error(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError("none", 0, 0);
}

TEST(ParseModel, ReadsAllSections) {
  const GameModel m = parse_model(kTiny);
  EXPECT_EQ(m.agents(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(m.states(), (std::vector<std::string>{"s0", "s1"}));
  EXPECT_EQ(m.actions(0, 0), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(m.outcome(0, std::vector<std::size_t>{0, 0}), 1U);
  EXPECT_EQ(m.outcome(0, std::vector<std::size_t>{1, 0}), 0U);
  EXPECT_TRUE(m.valuation("p").contains(1));
  EXPECT_FALSE(m.valuation("p").contains(0));
  EXPECT_TRUE(is_valid(m));
}

TEST(ParseModel, PartialModelsParseButFailValidation) {
  const GameModel m = parse_model("agents: a\nstates: s\nactions s a: x y\ngo s (x) -> s\n");
  const auto report = validate_model(m);
  ASSERT_EQ(report.size(), 1U);
  EXPECT_EQ(report[0].profile, "(y)");
}

TEST(ParseModel, RejectsDuplicateGoLine) {
  const auto e = parse_error("agents: a\nstates: s\nactions s a: x\ngo s (x) -> s\ngo s (x) -> s\n");
  EXPECT_EQ(e.line(), 5U);
  EXPECT_NE(e.reason().find("duplicate outcome"), std::string::npos);
}

TEST(ParseModel, RejectsUnavailableAction) {
  const auto e = parse_error("agents: a\nstates: s\nactions s a: x\ngo s (w) -> s\n");
  EXPECT_EQ(e.line(), 4U);
  EXPECT_EQ(e.column(), 7U);
}

TEST(ParseModel, RejectsUnknownNames) {
  EXPECT_EQ(parse_error("agents: a\nstates: s\nlabels q: p\n").line(), 3U);
  EXPECT_EQ(parse_error("agents: a\nstates: s\nactions s z: x\n").column(), 11U);
  EXPECT_EQ(parse_error("agents: a\nstates: s\nactions s a: x\ngo s (x) -> nowhere\n").line(), 4U);
}

TEST(ParseModel, RejectsWrongProfileArity) {
  const std::string head = "agents: a b\nstates: s\nactions s a: x\nactions s b: y\n";
  EXPECT_NE(parse_error(head + "go s (x) -> s\n").reason().find("fewer"), std::string::npos);
  EXPECT_NE(parse_error(head + "go s (x,y,x) -> s\n").reason().find("more"), std::string::npos);
}

TEST(ParseModel, RejectsStructuralMistakes) {
  EXPECT_NE(parse_error("states: s\n").reason().find("agents"), std::string::npos);
  EXPECT_NE(parse_error("agents: a\n").reason().find("states"), std::string::npos);
  EXPECT_NE(parse_error("agents: a a\nstates: s\n").reason().find("duplicate"), std::string::npos);
  EXPECT_NE(parse_error("agents: a\nstates: s\nagents: b\n").reason().find("twice"), std::string::npos);
  EXPECT_NE(parse_error("agents: a\nstates: s\nlabels s:\nstates: t\n").reason().find("precede"), std::string::npos);
  EXPECT_NE(parse_error("agents: a\nstates: s\nfrobnicate s\n").reason().find("unknown keyword"), std::string::npos);
  EXPECT_NE(parse_error("agents: a\nstates: s\nactions s a: x\nactions s a: y\n").reason().find("duplicate"),
            std::string::npos);
  EXPECT_NE(parse_error("agents: a\nstates: s\nactions s a: x\ngo s (x) s\n").reason().find("->"), std::string::npos);
}

TEST(ParseModel, ActionsMayFollowGoLines) {
  const GameModel m = parse_model("agents: a\nstates: s\ngo s (x) -> s\nactions s a: x\n");
  EXPECT_TRUE(is_valid(m));
}

TEST(ParseModel, LoadModelPrefixesPath) {
  try {
    load_model(corpus_path("does-not-exist.cgm"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("does-not-exist"), std::string::npos);
  }
}

TEST(RenderModel, RoundTripsCorpus) {
  for (const char* f : {"ex1.cgm", "ex2.cgm", "exA.cgm", "exB.cgm", "exC.cgm", "prop4.cgm"}) {
    const GameModel m = corpus_model(f);
    const std::string text = render_model(m);
    const GameModel back = parse_model(text);
    EXPECT_EQ(back, m) << f;
    EXPECT_EQ(render_model(back), text) << f;
  }
}

TEST(RenderModel, RoundTripsPartialModels) {
  const GameModel m = parse_model("agents: a\nstates: s t\nactions s a: x y\ngo s (y) -> t\n");
  EXPECT_EQ(parse_model(render_model(m)), m);
}

} // namespace
} // namespace constr
