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

#include "egs/reduction.h"

#include <optional>
#include <random>

namespace egs {
namespace {

// Applies one step and checks that the measure went down.
template <typename Site, typename Fn>
void Apply(Game& game, TransformTrace& trace, const Site& site, Fn fn) {
  const long long before = TerminationMeasure(game);
  TransformResult r = fn(game, site);
  const long long after = TerminationMeasure(r.game);
  if (after >= before) {
    throw ConsistencyError("termination measure did not decrease (" +
                           std::to_string(before) + " -> " +
                           std::to_string(after) + ") at " + Describe(site));
  }
  game = std::move(r.game);
  trace.steps.push_back(std::move(r.step));
}

int SourceDepth(const Game& game, const CoalescingSite& site) {
  // Members are ascending in preorder, but the shallowest is what counts.
  int depth = game.Height() + 1;
  for (NodeIndex m : game.infoset(game.FindInfoset(site.source)).members) {
    depth = std::min(depth, game.node(m).depth);
  }
  return depth;
}

std::optional<CoalescingSite> CoalescingAtLevel(const Game& game, int level) {
  for (const CoalescingSite& s : FindCoalescingSites(game)) {
    if (SourceDepth(game, s) == level) return s;
  }
  return std::nullopt;
}

std::optional<SimultanizingSite> SimultanizingAtLevel(const Game& game,
                                                      int level) {
  for (const SimultanizingSite& s : FindSimultanizingSites(game)) {
    if (game.node(game.FindNode(s.history)).depth == level) return s;
  }
  return std::nullopt;
}

}  // namespace

bool IsMinimal(const Game& game) {
  return FindCoalescingSites(game).empty() &&
         FindSimultanizingSites(game).empty();
}

ReductionResult Minimize(const Game& game) {
  ReductionResult out{game, {}, 0};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int level = 0; level <= out.minimal_game.Height(); ++level) {
      ++out.levels_processed;
      while (auto site = CoalescingAtLevel(out.minimal_game, level)) {
        Apply(out.minimal_game, out.trace, *site, Coalesce);
        changed = true;
      }
      while (auto site = SimultanizingAtLevel(out.minimal_game, level)) {
        Apply(out.minimal_game, out.trace, *site, Simultanize);
        changed = true;
      }
    }
  }
  return out;
}

ReductionResult MinimizeRandomOrder(const Game& game, uint64_t seed) {
  ReductionResult out{game, {}, 0};
  std::mt19937_64 rng(seed);
  while (true) {
    const auto gamma = FindCoalescingSites(out.minimal_game);
    const auto sigma = FindSimultanizingSites(out.minimal_game);
    const size_t total = gamma.size() + sigma.size();
    if (total == 0) break;
    const size_t pick =
        std::uniform_int_distribution<size_t>(0, total - 1)(rng);
    if (pick < gamma.size()) {
      Apply(out.minimal_game, out.trace, gamma[pick], Coalesce);
    } else {
      Apply(out.minimal_game, out.trace, sigma[pick - gamma.size()],
            Simultanize);
    }
  }
  return out;
}

}  // namespace egs
