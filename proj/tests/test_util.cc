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

#include "test_util.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "egs/io.h"

#ifndef EGS_FIXTURE_DIR
#error "EGS_FIXTURE_DIR must point at the fixture directory"
#endif

namespace egs::testing {

std::string ReadFixture(const std::string& name) {
  const std::string path = std::string(EGS_FIXTURE_DIR) + "/" + name;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Game LoadFixture(const std::string& name) {
  return ParseEgs(ReadFixture(name + ".egs"));
}

NormalForm LoadZnf(const std::string& name) {
  return ParseZnf(ReadFixture(name + ".znf"));
}

GeneratorConfig SuiteConfig(uint64_t index, int max_nodes) {
  GeneratorConfig c;
  c.seed = 0x9e3779b97f4a7c15ULL * (index + 1);
  c.num_players = 2 + static_cast<int>(index % 3);
  c.max_depth = 2 + static_cast<int>((index / 3) % 3);
  c.max_actions = 2 + static_cast<int>((index / 9) % 2);
  c.simultaneity_prob = 0.3;
  c.infoset_merge_prob = 0.6;
  c.max_nodes = max_nodes;
  return c;
}

size_t ReducedProfileCount(const Game& game) {
  size_t n = 1;
  for (PlayerIndex p = 0; p < game.num_players(); ++p) {
    const size_t k = ReducedStrategies(game, p).size();
    if (n > SIZE_MAX / k) return SIZE_MAX;
    n *= k;
  }
  return n;
}

Game SuiteGame(uint64_t& index, int max_nodes, size_t max_profiles) {
  while (true) {
    Game g = GenerateRandomGame(SuiteConfig(index++, max_nodes));
    if (ReducedProfileCount(g) <= max_profiles) return g;
  }
}

Game Relabel(const Game& game, std::mt19937_64& rng) {
  std::vector<std::string> node_ids(game.num_nodes());
  {
    std::vector<int> perm(game.num_nodes());
    for (size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (size_t k = 0; k < perm.size(); ++k) {
      node_ids[k] = "v" + std::to_string(perm[k]);
    }
  }
  // Per information set, a shuffled assignment of fresh displays.
  std::vector<std::map<std::string, std::string>> displays(
      game.infosets().size());
  for (size_t k = 0; k < displays.size(); ++k) {
    const auto& actions = game.infoset(static_cast<InfosetIndex>(k)).actions;
    std::vector<std::string> fresh;
    for (size_t a = 0; a < actions.size(); ++a) {
      fresh.push_back("m" + std::to_string(a));
    }
    std::shuffle(fresh.begin(), fresh.end(), rng);
    for (size_t a = 0; a < actions.size(); ++a) {
      displays[k][actions[a]] = fresh[a];
    }
  }
  std::vector<std::string> names;
  for (size_t z = 0; z < game.terminals().size(); ++z) {
    names.push_back("t" + std::to_string(z));
  }
  std::shuffle(names.begin(), names.end(), rng);

  GameBuilder b(game.name() + "-relabeled");
  for (const std::string& p : game.players()) b.AddPlayer(p);
  size_t next_name = 0;
  for (NodeIndex x = 0; x < game.num_nodes(); ++x) {
    const Node& n = game.node(x);
    if (x == game.root()) {
      b.AddRoot(node_ids[x]);
    } else {
      std::vector<std::pair<std::string, std::string>> move;
      for (const MoveEntry& e : n.move) {
        const InfosetIndex k = game.InfosetAt(n.parent, e.player);
        move.emplace_back(game.players()[e.player], displays[k].at(e.action));
      }
      b.AddNode(node_ids[x], node_ids[n.parent], std::move(move));
    }
    if (n.terminal()) b.SetTerminalName(node_ids[x], names[next_name++]);
  }
  for (size_t k = 0; k < game.infosets().size(); ++k) {
    const InfoSet& set = game.infoset(static_cast<InfosetIndex>(k));
    std::vector<std::string> members;
    for (NodeIndex m : set.members) members.push_back(node_ids[m]);
    b.AddInfoset(game.players()[set.owner], "I" + std::to_string(k),
                 std::move(members));
  }
  return b.Build();
}

std::optional<Game> RandomStep(const Game& game, std::mt19937_64& rng) {
  const auto gammas = FindCoalescingSites(game);
  const auto sigmas = FindSimultanizingSites(game);
  std::vector<std::pair<std::string, std::string>> splits;
  for (const Node& n : game.nodes()) {
    if (n.active.size() < 2) continue;
    for (PlayerIndex p : n.active) splits.emplace_back(n.id, game.players()[p]);
  }
  const size_t total = gammas.size() + sigmas.size() + splits.size();
  if (total == 0) return std::nullopt;
  size_t pick = std::uniform_int_distribution<size_t>(0, total - 1)(rng);
  if (pick < gammas.size()) return Coalesce(game, gammas[pick]).game;
  pick -= gammas.size();
  if (pick < sigmas.size()) return Simultanize(game, sigmas[pick]).game;
  pick -= sigmas.size();
  return SplitSimultaneous(game, splits[pick].first, splits[pick].second)
      .game;
}

namespace {

std::string FreshId(const Game& game, std::string base) {
  while (game.HasNode(base)) base += "_";
  return base;
}

}  // namespace

Game AddTerminalPerturbation(const Game& game, std::mt19937_64& rng) {
  const auto& terms = game.terminals();
  const NodeIndex target = terms[std::uniform_int_distribution<size_t>(
      0, terms.size() - 1)(rng)];
  const std::string player = game.players()[std::uniform_int_distribution<int>(
      0, game.num_players() - 1)(rng)];
  std::set<std::string> used;
  for (NodeIndex z : terms) used.insert(game.node(z).terminal_name);
  std::string extra = "zx";
  while (used.count(extra)) extra += "_";

  GameBuilder b(game.name() + "-perturbed");
  for (const std::string& p : game.players()) b.AddPlayer(p);
  for (NodeIndex x = 0; x < game.num_nodes(); ++x) {
    const Node& n = game.node(x);
    if (x == game.root()) {
      b.AddRoot(n.id);
    } else {
      std::vector<std::pair<std::string, std::string>> move;
      for (const MoveEntry& e : n.move) {
        move.emplace_back(game.players()[e.player], e.action);
      }
      b.AddNode(n.id, game.node(n.parent).id, std::move(move));
    }
    if (n.terminal() && x != target) b.SetTerminalName(n.id, n.terminal_name);
  }
  const Node& t = game.node(target);
  const std::string left = FreshId(game, t.id + "_l");
  const std::string right = FreshId(game, t.id + "_r");
  b.AddNode(left, t.id, {{player, "pl"}});
  b.AddNode(right, t.id, {{player, "pr"}});
  b.SetTerminalName(left, t.terminal_name);
  b.SetTerminalName(right, extra);
  for (const InfoSet& set : game.infosets()) {
    std::vector<std::string> members;
    for (NodeIndex m : set.members) members.push_back(game.node(m).id);
    b.AddInfoset(game.players()[set.owner], set.id, std::move(members));
  }
  return b.Build();
}

namespace {

bool TryPermutations(const NormalForm& a, const NormalForm& b, size_t player,
                     std::vector<std::vector<int>>& perm) {
  if (player == a.players.size()) {
    std::map<int, int> fwd;
    std::map<int, int> back;
    std::vector<int> q(a.players.size());
    for (size_t idx = 0; idx < a.num_profiles(); ++idx) {
      const std::vector<int> pa = a.Profile(idx);
      for (size_t p = 0; p < pa.size(); ++p) q[p] = perm[p][pa[p]];
      const int za = a.outcome[idx];
      const int zb = b.outcome[b.ProfileIndex(q)];
      auto [f, fi] = fwd.emplace(za, zb);
      auto [r, ri] = back.emplace(zb, za);
      if (f->second != zb || r->second != za) return false;
    }
    return true;
  }
  std::vector<int>& pp = perm[player];
  pp.resize(a.strategies[player].size());
  for (size_t k = 0; k < pp.size(); ++k) pp[k] = static_cast<int>(k);
  do {
    if (TryPermutations(a, b, player + 1, perm)) return true;
  } while (std::next_permutation(pp.begin(), pp.end()));
  return false;
}

}  // namespace

bool BruteForceNormalFormIsomorphic(const NormalForm& a, const NormalForm& b) {
  if (a.players != b.players || a.terminals.size() != b.terminals.size()) {
    return false;
  }
  for (size_t p = 0; p < a.players.size(); ++p) {
    if (a.strategies[p].size() != b.strategies[p].size()) return false;
  }
  std::vector<std::vector<int>> perm(a.players.size());
  return TryPermutations(a, b, 0, perm);
}

std::vector<std::string> TerminalsBelowOracle(const Game& game, NodeIndex h) {
  std::vector<std::string> out;
  for (const Node& n : game.nodes()) {
    if (!n.terminal()) continue;
    for (NodeIndex cur = game.FindNode(n.id); cur != kNoNode;
         cur = game.node(cur).parent) {
      if (cur == h) {
        out.push_back(n.terminal_name);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace egs::testing
