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

#ifndef EGS_STRATEGY_H_
#define EGS_STRATEGY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "egs/game.h"

namespace egs {

// A pure strategy. choices[r] is an index into the actions of the r-th
// information set of `owner` (in Game::InfosetsOf order).
struct Strategy {
  PlayerIndex owner = 0;
  std::vector<int> choices;

  auto operator<=>(const Strategy&) const = default;
};

// "x.a": displays of the chosen actions joined by '.'.
std::string StrategyLabel(const Game& game, const Strategy& s);

// All strategies of `player`, in lexicographic order of their choices.
std::vector<Strategy> EnumerateStrategies(const Game& game, PlayerIndex player);

// Terminal reached when each player follows profile[player].
NodeIndex Play(const Game& game, const std::vector<Strategy>& profile);

// Definition-level check: same terminal against every co-player profile.
// Exponential in the co-players' information sets; meant as a test oracle.
bool BehaviorallyEquivalent(const Game& game, const Strategy& s,
                            const Strategy& t);

// Structural check: s and t allow the same own information sets to be reached
// and choose the same actions there.
bool KuhnEquivalent(const Game& game, const Strategy& s, const Strategy& t);

// Information sets of the owner consistent with s, as a mask over
// InfosetsOf(owner).
std::vector<bool> ConsistentInfosets(const Game& game, const Strategy& s);

// An equivalence class of strategies, stored as a plan: plan[r] is the chosen
// action index at the r-th own information set, or -1 where that set cannot
// be reached under the plan.
struct ReducedStrategy {
  PlayerIndex owner = 0;
  std::vector<int> plan;
  std::string label;

  // Every strategy in the class.
  std::vector<Strategy> Members(const Game& game) const;
  bool Contains(const Strategy& s) const;
};

// The classes of `player`, sorted by label. Labels join the displays chosen
// at consistent information sets with '.'. Should two classes print the same,
// every label of that player is qualified as "display@infoset".
std::vector<ReducedStrategy> ReducedStrategies(const Game& game,
                                               PlayerIndex player);

// The classes whose plan reaches information set `k`. Throws QueryError if
// `player` does not own `k`.
std::vector<ReducedStrategy> ConsistentStrategies(const Game& game,
                                                  PlayerIndex player,
                                                  InfosetIndex k);

// A normal form mapping strategy-label profiles to terminal names. Profiles
// are flattened in mixed radix with player 0 most significant.
struct NormalForm {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> strategies;  // per player, sorted
  std::vector<std::string> terminals;                // natural order
  std::vector<int> outcome;                          // indices into terminals

  size_t num_profiles() const;
  size_t ProfileIndex(const std::vector<int>& profile) const;
  std::vector<int> Profile(size_t index) const;
  const std::string& OutcomeName(const std::vector<int>& profile) const {
    return terminals[outcome[ProfileIndex(profile)]];
  }

  // Throws QueryError unless the table is total and every terminal is hit.
  void CheckWellFormed() const;
};

using ReducedNormalForm = NormalForm;

// Tables larger than this many profiles are refused with QueryError.
inline constexpr size_t kMaxProfiles = size_t{1} << 22;

// The Z-reduced normal form: classes of ReducedStrategies against each other.
ReducedNormalForm ComputeReducedNormalForm(const Game& game);

// The Z-normal form over unreduced strategies.
NormalForm ComputeNormalForm(const Game& game);

// Orders "z2" before "z10" by comparing digit runs numerically.
bool NaturalLess(const std::string& a, const std::string& b);

}  // namespace egs

#endif  // EGS_STRATEGY_H_
