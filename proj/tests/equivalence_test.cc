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
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "egs/equivalence.h"
#include "egs/io.h"
#include "egs/reduction.h"
#include "test_util.h"

namespace egs {
namespace {

using testing::BruteForceNormalFormIsomorphic;
using testing::LoadFixture;

NormalForm Rnf(const char* name) {
  return ComputeReducedNormalForm(LoadFixture(name));
}

NormalForm TwoByTwo(std::vector<std::string> outcomes) {
  std::string text = "players 1 2\nstrategies 1: a b\nstrategies 2: x y\n";
  std::vector<std::string> names = outcomes;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  text += "terminals";
  for (const auto& z : names) text += " " + z;
  text += "\noutcome a x -> " + outcomes[0] + "\noutcome a y -> " +
          outcomes[1] + "\noutcome b x -> " + outcomes[2] +
          "\noutcome b y -> " + outcomes[3] + "\n";
  return ParseZnf(text);
}

TEST_CASE("first example normal forms are isomorphic") {
  const NormalForm a = Rnf("fig1_left");
  const NormalForm b = Rnf("fig1_right");
  CHECK(a.strategies[0].size() == 3);
  CHECK(a.terminals == std::vector<std::string>{"z1", "z2", "z3"});
  CHECK(FindNormalFormIsomorphism(a, b));
  // Pinning the terminals forces x <-> x, y.a <-> a, y.b <-> b.
  NormalFormIsoOptions pin;
  for (const auto& z : a.terminals) pin.fixed_terminals[z] = z;
  const auto iso = FindNormalFormIsomorphism(a, b, pin);
  REQUIRE(iso);
  CHECK(Verify(a, b, *iso));
  CHECK(b.strategies[0][iso->strategy_map[0][0]] == "x");
  CHECK(b.strategies[0][iso->strategy_map[0][1]] == "a");
  CHECK(b.strategies[0][iso->strategy_map[0][2]] == "b");
  CHECK(iso->terminal_map == std::vector<int>{0, 1, 2});
}

TEST_CASE("second example normal forms are isomorphic") {
  const auto iso = FindNormalFormIsomorphism(Rnf("fig2_left"), Rnf("fig2_right"));
  REQUIRE(iso);
  CHECK(Verify(Rnf("fig2_left"), Rnf("fig2_right"), *iso));
}

TEST_CASE("distinct outcomes against a repeated one") {
  CHECK_FALSE(FindNormalFormIsomorphism(TwoByTwo({"z1", "z2", "z3", "z4"}),
                                        TwoByTwo({"z1", "z2", "z3", "z3"})));
  CHECK(FindNormalFormIsomorphism(TwoByTwo({"z1", "z2", "z3", "z4"}),
                                  TwoByTwo({"z4", "z3", "z2", "z1"})));
}

TEST_CASE("pinned terminals") {
  const NormalForm a = TwoByTwo({"z1", "z2", "z3", "z4"});
  NormalFormIsoOptions o;
  o.fixed_terminals = {{"z1", "z2"}};
  const auto iso = FindNormalFormIsomorphism(a, a, o);
  REQUIRE(iso);
  CHECK(iso->terminal_map[0] == 1);
  CHECK(Verify(a, a, *iso));
  o.fixed_terminals = {{"z1", "z9"}};
  CHECK_FALSE(FindNormalFormIsomorphism(a, a, o));
}

TEST_CASE("players are matched by name unless permutation is asked for") {
  const NormalForm a = ParseZnf(R"(players 1 2
strategies 1: a b c
strategies 2: x y
terminals z1 z2 z3 z4 z5 z6
outcome a x -> z1
outcome a y -> z2
outcome b x -> z3
outcome b y -> z4
outcome c x -> z5
outcome c y -> z6
)");
  const NormalForm b = ParseZnf(R"(players 1 2
strategies 1: x y
strategies 2: a b c
terminals z1 z2 z3 z4 z5 z6
outcome x a -> z1
outcome x b -> z3
outcome x c -> z5
outcome y a -> z2
outcome y b -> z4
outcome y c -> z6
)");
  CHECK_FALSE(FindNormalFormIsomorphism(a, b));
  NormalFormIsoOptions o;
  o.permute_players = true;
  const auto iso = FindNormalFormIsomorphism(a, b, o);
  REQUIRE(iso);
  CHECK(iso->player_map == std::vector<int>{1, 0});
  CHECK(Verify(a, b, *iso));
}

TEST_CASE("isomorphism search agrees with brute force") {
  std::mt19937_64 rng(11);
  int positive = 0;
  for (int trial = 0; trial < 300; ++trial) {
    // Random small tables; half the time a shuffled copy.
    NormalForm a;
    a.players = {"1", "2"};
    const int rows = 2 + static_cast<int>(rng() % 3);
    const int cols = 1 + static_cast<int>(rng() % 3);
    for (int r = 0; r < rows; ++r) a.strategies.resize(2);
    for (int r = 0; r < rows; ++r) a.strategies[0].push_back("s" + std::to_string(r));
    for (int c = 0; c < cols; ++c) a.strategies[1].push_back("t" + std::to_string(c));
    const int nz = 2 + static_cast<int>(rng() % 4);
    for (int z = 0; z < nz; ++z) a.terminals.push_back("z" + std::to_string(z + 1));
    a.outcome.resize(a.num_profiles());
    for (size_t k = 0; k < a.outcome.size(); ++k) {
      a.outcome[k] = k < static_cast<size_t>(nz) ? static_cast<int>(k)
                                                  : static_cast<int>(rng() % nz);
    }
    if (a.outcome.size() < static_cast<size_t>(nz)) continue;
    NormalForm b = a;
    if (trial % 2 == 0) {
      std::vector<int> rp(rows), cp(cols), zp(nz);
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::iota(zp.begin(), zp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), rng);
      std::shuffle(cp.begin(), cp.end(), rng);
      std::shuffle(zp.begin(), zp.end(), rng);
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          b.outcome[b.ProfileIndex({rp[r], cp[c]})] =
              zp[a.outcome[a.ProfileIndex({r, c})]];
        }
      }
    } else {
      for (size_t k = 0; k < b.outcome.size(); ++k) {
        b.outcome[k] = static_cast<int>(rng() % nz);
      }
    }
    const bool truth = BruteForceNormalFormIsomorphic(a, b);
    const auto iso = FindNormalFormIsomorphism(a, b);
    CHECK(iso.has_value() == truth);
    if (iso) {
      CHECK(Verify(a, b, *iso));
      ++positive;
    }
    CHECK(FindNormalFormIsomorphism(b, a).has_value() == truth);
  }
  CHECK(positive >= 100);
}

TEST_CASE("game isomorphism") {
  const Game g = LoadFixture("fig7_right");
  CHECK(GameIsomorphic(g, g));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const Game r = testing::Relabel(g, rng);
    CHECK(GameIsomorphic(g, r));
    CHECK(GameIsomorphic(r, g));
    CHECK_FALSE(GameIsomorphic(g, r, {.match_terminal_names = true}) !=
                FindGameIsomorphism(g, r, {.match_terminal_names = true})
                    .has_value());
  }
  CHECK_FALSE(GameIsomorphic(LoadFixture("fig1_right"), g));
  CHECK_FALSE(GameIsomorphic(LoadFixture("fig2_left"), LoadFixture("fig2_right")));
  CHECK_FALSE(GameIsomorphic(LoadFixture("fig5_left"), LoadFixture("fig6")));
}

TEST_CASE("relabeled random games stay isomorphic") {
  std::mt19937_64 rng(5);
  uint64_t index = 4000;
  for (int k = 0; k < 40; ++k) {
    const Game g = testing::SuiteGame(index, 40, SIZE_MAX);
    const Game r = testing::Relabel(g, rng);
    const auto iso = FindGameIsomorphism(g, r);
    REQUIRE(iso);
    // Parenthood is preserved by the witness.
    for (NodeIndex x = 1; x < g.num_nodes(); ++x) {
      CHECK(r.node(iso->node_map[x]).parent == iso->node_map[g.node(x).parent]);
    }
  }
}

TEST_CASE("deciding equivalence on the examples") {
  for (auto method : {EquivalenceMethod::kDirect, EquivalenceMethod::kMinimal,
                      EquivalenceMethod::kBoth}) {
    CHECK(DecideEquivalence(LoadFixture("fig1_left"), LoadFixture("fig1_right"),
                            method)
              .equivalent);
    CHECK(DecideEquivalence(LoadFixture("fig2_left"), LoadFixture("fig2_right"),
                            method)
              .equivalent);
    CHECK_FALSE(DecideEquivalence(LoadFixture("fig1_right"),
                                  LoadFixture("fig2_right"), method)
                    .equivalent);
  }
  const auto v = DecideEquivalence(LoadFixture("fig4_left"),
                                   LoadFixture("fig4_right"),
                                   EquivalenceMethod::kBoth);
  CHECK(v.equivalent);
  CHECK(v.normal_form_witness);
  CHECK(v.minimal_witness);
  REQUIRE(v.reduction_a);
  CHECK(v.reduction_a->trace.steps.size() >= 1);
}

TEST_CASE("invalid inputs are refused") {
  const Game bad =
      ParseEgs("players 1\nnode r root\nnode a parent=r move=1:a\n", false);
  CHECK_THROWS_AS(
      DecideEquivalence(bad, LoadFixture("fig1_left"), EquivalenceMethod::kDirect),
      ValidationError);
}

TEST_CASE("reconstructing the three-row table") {
  const Game g = Reconstruct(testing::LoadZnf("fig8"));
  CHECK(GameIsomorphic(g, LoadFixture("fig7_right"),
                       {.match_terminal_names = true}));
  const Node& root = g.node(g.root());
  REQUIRE(root.active.size() == 1);
  CHECK(g.players()[root.active[0]] == "1");
  CHECK(root.children.size() == 3);
  CHECK(IsMinimal(g));
}

TEST_CASE("degenerate tables are not realizable") {
  CHECK_THROWS_AS(Reconstruct(ParseZnf(R"(players 1
strategies 1: a
terminals z1
outcome a -> z1
)")),
                  RealizabilityError);
  // Rows and columns that cross without a tree order.
  CHECK_THROWS_AS(Reconstruct(TwoByTwo({"z1", "z2", "z2", "z1"})),
                  RealizabilityError);
}

TEST_CASE("reconstruction round trips through the minimal game") {
  const Game m = Minimize(LoadFixture("fig4_left")).minimal_game;
  CHECK(GameIsomorphic(Reconstruct(Rnf("fig4_right")), m));
  for (const char* name : {"fig1_left", "fig2_left", "fig3", "fig5_left",
                           "fig6", "fig7_left"}) {
    CAPTURE(name);
    const Game g = LoadFixture(name);
    CHECK(GameIsomorphic(Reconstruct(ComputeReducedNormalForm(g)),
                         Minimize(g).minimal_game));
  }
}

// Player 2's set spans two root cells whose own finest partitions differ;
// the shared set must use their common coarsening.
TEST_CASE("reconstruction with a set spanning cells") {
  const Game g = LoadFixture("shared_set");
  REQUIRE(IsMinimal(g));
  const Game r = Reconstruct(ComputeReducedNormalForm(g));
  CHECK(Validate(r).ok());
  CHECK(GameIsomorphic(r, g));
}

}  // namespace
}  // namespace egs
