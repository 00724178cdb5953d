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

#ifndef EGS_REDUCTION_H_
#define EGS_REDUCTION_H_

#include <cstdint>

#include "egs/game.h"
#include "egs/transform.h"

namespace egs {

struct ReductionResult {
  Game minimal_game;
  TransformTrace trace;
  int levels_processed = 0;
};

// True iff the game has neither a coalescing nor a simultanizing site.
bool IsMinimal(const Game& game);

// Level-ordered reduction. For n = 0, 1, ... it coalesces at sites whose
// source information set has a member of depth n (its shallowest), then
// simultanizes at histories of depth n, recomputing sites after every step.
// Passes repeat until one changes nothing. Every step is checked to yield a
// valid game and to decrease TerminationMeasure; a failure throws
// ConsistencyError.
ReductionResult Minimize(const Game& game);

// Applies a uniformly random available site until none is left.
ReductionResult MinimizeRandomOrder(const Game& game, uint64_t seed);

}  // namespace egs

#endif  // EGS_REDUCTION_H_
