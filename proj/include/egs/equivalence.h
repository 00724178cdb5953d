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

#ifndef EGS_EQUIVALENCE_H_
#define EGS_EQUIVALENCE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egs/game.h"
#include "egs/reduction.h"
#include "egs/strategy.h"

namespace egs {

// Per-player strategy bijections and a terminal bijection between two normal
// forms with the same players. Indices refer to the forms' sorted lists.
struct NormalFormIsomorphism {
  std::vector<int> player_map;                // a's player p -> b's player
  std::vector<std::vector<int>> strategy_map;  // per a-player
  std::vector<int> terminal_map;
};

struct NormalFormIsoOptions {
  // Fixes part of the terminal bijection (a's name -> b's name).
  std::map<std::string, std::string> fixed_terminals;
  // Diagnostic: also search over player bijections. Off by default, since
  // the definition indexes the strategy bijections by a shared player set.
  bool permute_players = false;
};

std::optional<NormalFormIsomorphism> FindNormalFormIsomorphism(
    const NormalForm& a, const NormalForm& b,
    const NormalFormIsoOptions& options = {});

// Recomputes every outcome under `iso`.
bool Verify(const NormalForm& a, const NormalForm& b,
            const NormalFormIsomorphism& iso);

// Node bijection between two games with identical player sets.
struct GameIsomorphism {
  std::vector<NodeIndex> node_map;  // a's node -> b's node
  std::map<InfosetIndex, InfosetIndex> infoset_map;
};

struct GameIsoOptions {
  bool match_terminal_names = false;
  bool match_action_labels = false;
};

// Searches for a bijection preserving the root, parenthood, active players,
// information sets and the product structure of child moves, allowing any
// consistent relabeling of actions per information set.
std::optional<GameIsomorphism> FindGameIsomorphism(
    const Game& a, const Game& b, const GameIsoOptions& options = {});

bool GameIsomorphic(const Game& a, const Game& b,
                    const GameIsoOptions& options = {});

enum class EquivalenceMethod { kDirect, kMinimal, kBoth };

struct EquivalenceVerdict {
  bool equivalent = false;
  EquivalenceMethod method = EquivalenceMethod::kBoth;
  std::optional<NormalFormIsomorphism> normal_form_witness;
  // Reductions of both inputs to the common minimal game.
  std::optional<ReductionResult> reduction_a;
  std::optional<ReductionResult> reduction_b;
  std::optional<GameIsomorphism> minimal_witness;
};

// Decides behavioral equivalence. kDirect compares reduced normal forms,
// kMinimal compares minimal reductions, kBoth runs both and throws
// ConsistencyError if they disagree.
EquivalenceVerdict DecideEquivalence(const Game& a, const Game& b,
                                     EquivalenceMethod method);

// Builds the minimal game whose reduced normal form is `nf`. Throws
// RealizabilityError when no such game exists in the supported class, which
// includes forms with a single terminal.
Game Reconstruct(const NormalForm& nf);

}  // namespace egs

#endif  // EGS_EQUIVALENCE_H_
