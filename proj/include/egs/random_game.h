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

#ifndef EGS_RANDOM_GAME_H_
#define EGS_RANDOM_GAME_H_

#include <cstdint>

#include "egs/game.h"

namespace egs {

struct GeneratorConfig {
  uint64_t seed = 1;
  int num_players = 2;            // 2..5
  int max_depth = 3;              // 1..5
  int max_actions = 2;            // 2..3
  double simultaneity_prob = 0.2;  // chance of each extra mover at a node
  double infoset_merge_prob = 0.5;
  // Soft cap on the number of nodes; growth stops expanding once reached.
  int max_nodes = 200;
  // Chance that a node below the root and above max_depth is expanded.
  double expand_prob = 0.7;
};

// Throws QueryError if a field is out of range.
void CheckConfig(const GeneratorConfig& config);

// A random valid game with perfect recall. The tree grows top-down; then, in
// breadth-first order, each decision node may join an earlier information set
// of its player with the same action count and record and no related member.
// Identical configs give identical games.
Game GenerateRandomGame(const GeneratorConfig& config);

}  // namespace egs

#endif  // EGS_RANDOM_GAME_H_
