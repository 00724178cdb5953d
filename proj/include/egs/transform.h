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

#ifndef EGS_TRANSFORM_H_
#define EGS_TRANSFORM_H_

#include <string>
#include <utility>
#include <vector>

#include "egs/game.h"

namespace egs {

// Information set `target` controls `source`: following `pivot` at `source`
// leads to exactly the terminals of `target`. Sites refer to ids, not
// indices, so they stay meaningful across rebuilds.
struct CoalescingSite {
  std::string player;
  std::string source;
  std::string target;
  std::string pivot;

  auto operator<=>(const CoalescingSite&) const = default;
};

// The nodes `dominating` of one information set of `player` dominate
// `history`, where the player is inactive: both have the same terminals.
struct SimultanizingSite {
  std::string player;
  std::string history;
  std::vector<std::string> dominating;

  auto operator<=>(const SimultanizingSite&) const = default;
};

struct TraceStep {
  enum class Kind { kCoalesce, kSimultanize, kSplit };

  Kind kind = Kind::kCoalesce;
  CoalescingSite coalescing;        // set for kCoalesce
  SimultanizingSite simultanizing;  // set for kSimultanize
  std::string split_history;        // set for kSplit
  std::string split_first;          // set for kSplit

  // Every node of the output paired with the input node it descends from.
  // Nodes newly introduced by a split map from the split node.
  std::vector<std::pair<std::string, std::string>> node_map;
  // Terminal names, input to output.
  std::vector<std::pair<std::string, std::string>> terminal_map;
};

const char* KindName(TraceStep::Kind kind);

struct TransformTrace {
  std::vector<TraceStep> steps;
};

struct TransformResult {
  Game game;
  TraceStep step;
};

struct ChainResult {
  Game game;
  TransformTrace trace;
};

// Every coalescing site, ordered by (source rank, pivot).
std::vector<CoalescingSite> FindCoalescingSites(const Game& game);

// Every simultanizing site, ordered by (history, player).
std::vector<SimultanizingSite> FindSimultanizingSites(const Game& game);

// Throws InvalidSiteError if `site` is not a site of `game`.
void CheckSite(const Game& game, const CoalescingSite& site);
void CheckSite(const Game& game, const SimultanizingSite& site);

// Merges the target information set into the source one. The pivot action is
// replaced by the target's actions (a display that clashes with a remaining
// source action gets a "'" suffix). Co-player nodes between the two sets are
// replicated once per target action; replicas stay in their original
// information set. Target nodes where the player moved alone are spliced
// out. Terminal names are preserved.
TransformResult Coalesce(const Game& game, const CoalescingSite& site);

// Moves the player's choice at the dominating nodes up into the move of
// `history`, which joins their information set in their place. Intermediate
// co-player nodes are replicated once per action as in Coalesce.
TransformResult Simultanize(const Game& game, const SimultanizingSite& site);

// Splits a simultaneous node: `first` moves alone at `history`, followed by
// one new node per action of `first` where the remaining active players
// move, in their original information sets. Throws InvalidSiteError unless
// `first` and at least one other player are active at `history`.
TransformResult SplitSimultaneous(const Game& game, const std::string& history,
                                  const std::string& first);

// Simultanize, then split with the site's player moving first: the classic
// interchange of two consecutive moves.
ChainResult ClassicInterchange(const Game& game,
                               const SimultanizingSite& site);

// Human-readable site descriptions.
std::string Describe(const CoalescingSite& site);
std::string Describe(const SimultanizingSite& site);

// Sum of |I(h)| * (depth(h) + 1) * |Z(h)| over non-terminal nodes. Coalescing
// and simultanizing both strictly decrease it.
long long TerminationMeasure(const Game& game);

// Sum of the action counts over the player's information sets.
int ActionCountSum(const Game& game, PlayerIndex player);

}  // namespace egs

#endif  // EGS_TRANSFORM_H_
