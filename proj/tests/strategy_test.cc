// Copyright 2026 The egs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "egs/io.h"
#include "egs/random_game.h"
#include "egs/strategy.h"
#include "test_util.h"

namespace egs {
namespace {

using testing::LoadFixture;

std::vector<std::string> Labels(const Game& g, PlayerIndex p) {
  std::vector<std::string> out;
  for (const Strategy& s : EnumerateStrategies(g, p)) {
    out.push_back(StrategyLabel(g, s));
  }
  return out;
}

std::vector<std::string> ReducedLabels(const Game& g, PlayerIndex p) {
  std::vector<std::string> out;
  for (const ReducedStrategy& s : ReducedStrategies(g, p)) {
    out.push_back(s.label);
  }
  return out;
}

Strategy ByLabel(const Game& g, PlayerIndex p, const std::string& label) {
  for (const Strategy& s : EnumerateStrategies(g, p)) {
    if (StrategyLabel(g, s) == label) return s;
  }
  FAIL("no strategy " << label);
  return {};
}

std::string TerminalOf(const Game& g, const std::vector<std::string>& labels) {
  std::vector<Strategy> profile;
  for (PlayerIndex p = 0; p < g.num_players(); ++p) {
    profile.push_back(ByLabel(g, p, labels[p]));
  }
  return g.node(Play(g, profile)).terminal_name;
}

TEST_CASE("enumeration") {
  CHECK(Labels(LoadFixture("fig1_left"), 0) ==
        std::vector<std::string>{"x.a", "x.b", "y.a", "y.b"});
  CHECK(Labels(LoadFixture("fig1_right"), 0) ==
        std::vector<std::string>{"a", "b", "x"});
  CHECK(Labels(LoadFixture("fig2_left"), 1) ==
        std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(EnumerateStrategies(LoadFixture("fig2_left"), 2),
                  QueryError);
}

TEST_CASE("play") {
  CHECK(TerminalOf(LoadFixture("fig1_left"), {"y.a"}) == "z2");
  CHECK(TerminalOf(LoadFixture("fig2_left"), {"x", "a"}) == "z1");
  const Game f3 = LoadFixture("fig3");
  CHECK(TerminalOf(f3, {"u", "l", "x"}) == "z1");
  CHECK(TerminalOf(f3, {"u", "l", "y"}) == "z1");
  CHECK(TerminalOf(f3, {"d", "l", "y"}) == "z5");
  CHECK_THROWS_AS(Play(f3, {}), QueryError);
}

TEST_CASE("behavioral and structural equivalence on the first example") {
  const Game g = LoadFixture("fig1_left");
  const Strategy xa = ByLabel(g, 0, "x.a");
  const Strategy xb = ByLabel(g, 0, "x.b");
  const Strategy ya = ByLabel(g, 0, "y.a");
  const Strategy yb = ByLabel(g, 0, "y.b");
  CHECK(BehaviorallyEquivalent(g, xa, xb));
  CHECK_FALSE(BehaviorallyEquivalent(g, ya, yb));
  CHECK(BehaviorallyEquivalent(g, ya, ya));
  CHECK(KuhnEquivalent(g, xa, xb));
  CHECK_FALSE(KuhnEquivalent(g, ya, yb));
  CHECK(ConsistentInfosets(g, xa) == std::vector<bool>{true, false});
  CHECK(ConsistentInfosets(g, ya) == std::vector<bool>{true, true});

  const Game f2 = LoadFixture("fig2_left");
  CHECK_FALSE(KuhnEquivalent(f2, ByLabel(f2, 1, "a"), ByLabel(f2, 1, "b")));
  CHECK_THROWS_AS(KuhnEquivalent(f2, ByLabel(f2, 0, "x"), ByLabel(f2, 1, "a")),
                  QueryError);
}

TEST_CASE("reduced strategies") {
  const Game g = LoadFixture("fig1_left");
  const auto classes = ReducedStrategies(g, 0);
  REQUIRE(classes.size() == 3);
  CHECK(classes[0].label == "x");
  CHECK(classes[0].Members(g).size() == 2);
  CHECK(classes[0].Contains(ByLabel(g, 0, "x.b")));
  CHECK_FALSE(classes[0].Contains(ByLabel(g, 0, "y.b")));
  CHECK(classes[1].label == "y.a");
  CHECK(classes[2].label == "y.b");

  CHECK(ReducedLabels(LoadFixture("fig7_right"), 0) ==
        std::vector<std::string>{"a", "b", "u"});
  CHECK(ReducedLabels(LoadFixture("fig2_left"), 1) ==
        std::vector<std::string>{"a", "b"});
}

TEST_CASE("colliding labels are qualified") {
  const Game g = ParseEgs(R"(players 1 2
node r root
node a parent=r move=1:a
node ab parent=r move=1:a.b
node ax parent=a move=1:b
node ay parent=a move=1:c
node abx parent=ab move=2:x
node aby parent=ab move=2:y
)");
  CHECK(ReducedLabels(g, 0) ==
        std::vector<std::string>{"a.b@1@r", "a@1@r.b@1@a", "a@1@r.c@1@a"});
  CHECK(ReducedLabels(g, 1) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("consistent strategies") {
  const Game f1 = LoadFixture("fig1_left");
  std::vector<std::string> got;
  for (const auto& s : ConsistentStrategies(f1, 0, f1.FindInfoset("1@y"))) {
    got.push_back(s.label);
  }
  CHECK(got == std::vector<std::string>{"y.a", "y.b"});
  CHECK(ConsistentStrategies(f1, 0, f1.FindInfoset("1@root")).size() == 3);

  const Game f4 = LoadFixture("fig4_left");
  got.clear();
  for (const auto& s :
       ConsistentStrategies(f4, f4.PlayerIndexOf("2"), f4.FindInfoset("bottom"))) {
    got.push_back(s.label);
  }
  CHECK(got == std::vector<std::string>{"b.p", "b.q"});
  CHECK_THROWS_AS(ConsistentStrategies(f4, 0, f4.FindInfoset("bottom")),
                  QueryError);
}

TEST_CASE("reduced normal form of the minimal game is the three-row table") {
  const NormalForm nf = ComputeReducedNormalForm(LoadFixture("fig7_right"));
  CHECK(SerializeZnf(nf) == testing::ReadFixture("fig8.znf"));
  CHECK(nf.OutcomeName({2, 0}) == "z5");
  CHECK(nf.OutcomeName({2, 1}) == "z5");
  CHECK(nf.OutcomeName({0, 1}) == "z3");
}

TEST_CASE("one player, one set of k actions") {
  const Game g = ParseEgs(R"(players 1
node r root
node a parent=r move=1:a
node b parent=r move=1:b
node c parent=r move=1:c
)");
  const NormalForm nf = ComputeReducedNormalForm(g);
  CHECK(nf.strategies.size() == 1);
  CHECK(nf.strategies[0].size() == 3);
  CHECK(nf.num_profiles() == 3);
}

TEST_CASE("full normal form covers every strategy") {
  const NormalForm nf = ComputeNormalForm(LoadFixture("fig1_left"));
  CHECK(nf.strategies[0] ==
        std::vector<std::string>{"x.a", "x.b", "y.a", "y.b"});
  CHECK(nf.OutcomeName({0}) == "z1");
  CHECK(nf.OutcomeName({1}) == "z1");
  nf.CheckWellFormed();
}

TEST_CASE("profile indexing is mixed radix") {
  NormalForm nf;
  nf.players = {"1", "2"};
  nf.strategies = {{"a", "b", "c"}, {"x", "y"}};
  for (size_t idx = 0; idx < nf.num_profiles(); ++idx) {
    CHECK(nf.ProfileIndex(nf.Profile(idx)) == idx);
  }
  CHECK(nf.Profile(3) == std::vector<int>{1, 1});
}

TEST_CASE("natural order of names") {
  CHECK(NaturalLess("z2", "z10"));
  CHECK_FALSE(NaturalLess("z10", "z2"));
  CHECK(NaturalLess("a", "b"));
  CHECK_FALSE(NaturalLess("z1", "z1"));
}

// Classes from brute-force behavioral equivalence, as sorted member lists.
std::vector<std::vector<Strategy>> OracleClasses(const Game& g, PlayerIndex p) {
  std::vector<std::vector<Strategy>> classes;
  for (const Strategy& s : EnumerateStrategies(g, p)) {
    bool placed = false;
    for (auto& c : classes) {
      if (BehaviorallyEquivalent(g, c.front(), s)) {
        c.push_back(s);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({s});
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

TEST_CASE("reduced classes are exactly the behavioral classes") {
  std::vector<Game> games;
  for (const char* name : {"fig1_left", "fig4_left", "fig5_left", "fig6",
                           "fig7_left", "fig3"}) {
    games.push_back(LoadFixture(name));
  }
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.num_players = 2 + static_cast<int>(seed % 2);
    c.max_depth = 3;
    c.max_nodes = 25;
    c.infoset_merge_prob = 0.6;
    games.push_back(GenerateRandomGame(c));
  }
  for (const Game& g : games) {
    CAPTURE(g.name());
    for (PlayerIndex p = 0; p < g.num_players(); ++p) {
      std::vector<std::vector<Strategy>> got;
      for (const ReducedStrategy& r : ReducedStrategies(g, p)) {
        auto m = r.Members(g);
        std::sort(m.begin(), m.end());
        got.push_back(m);
      }
      std::sort(got.begin(), got.end());
      CHECK(got == OracleClasses(g, p));
    }
  }
}

TEST_CASE("oversized tables are refused") {
  GeneratorConfig c;
  c.seed = 5;
  c.num_players = 4;
  c.max_depth = 5;
  c.max_actions = 3;
  c.max_nodes = 400;
  c.infoset_merge_prob = 0.0;
  c.expand_prob = 1.0;
  const Game g = GenerateRandomGame(c);
  CHECK_THROWS_AS(ComputeNormalForm(g), QueryError);
}

}  // namespace
}  // namespace egs
