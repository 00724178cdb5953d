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

#include "egs/random_game.h"

#include <algorithm>
#include <random>

namespace egs {
namespace {

struct Draft {
  int parent = -1;
  int depth = 0;
  std::vector<int> active;  // ascending players
  std::vector<int> counts;  // action count per active player
  std::vector<std::pair<int, int>> move;  // (player, action index)
  std::vector<int> children;
  std::vector<int> infoset;  // per active player
};

struct DraftInfoset {
  int owner;
  int count;
  std::vector<int> members;
  std::vector<std::pair<int, int>> record;
};

class Generator {
 public:
  explicit Generator(const GeneratorConfig& c) : c_(c), rng_(c.seed) {}

  Game Run() {
    for (int attempt = 0;; ++attempt) {
      Grow(attempt >= 100);
      if (EveryoneActive()) break;
    }
    AssignInfosets();
    return Assemble();
  }

 private:
  double Uniform() { return std::uniform_real_distribution<double>(0, 1)(rng_); }
  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  void Grow(bool force_all_at_root) {
    nodes_.assign(1, Draft{});
    for (size_t x = 0; x < nodes_.size(); ++x) {
      const int depth = nodes_[x].depth;
      const bool root = x == 0;
      if (!root && (depth >= c_.max_depth || Uniform() >= c_.expand_prob)) {
        continue;
      }
      std::vector<int> active;
      if (root && force_all_at_root) {
        for (int p = 0; p < c_.num_players; ++p) active.push_back(p);
      } else {
        const int first = Int(0, c_.num_players - 1);
        active.push_back(first);
        for (int p = 0; p < c_.num_players; ++p) {
          if (p != first && Uniform() < c_.simultaneity_prob) {
            active.push_back(p);
          }
        }
        std::sort(active.begin(), active.end());
      }
      std::vector<int> counts;
      size_t product = 1;
      for (size_t k = 0; k < active.size(); ++k) {
        counts.push_back(root && force_all_at_root ? 2
                                                   : Int(2, c_.max_actions));
        product *= static_cast<size_t>(counts.back());
      }
      if (!root &&
          nodes_.size() + product > static_cast<size_t>(c_.max_nodes)) {
        continue;
      }
      nodes_[x].active = active;
      nodes_[x].counts = counts;
      for (size_t idx = 0; idx < product; ++idx) {
        Draft child;
        child.parent = static_cast<int>(x);
        child.depth = depth + 1;
        size_t rest = idx;
        for (size_t k = active.size(); k-- > 0;) {
          child.move.emplace_back(active[k], static_cast<int>(rest % counts[k]));
          rest /= counts[k];
        }
        std::reverse(child.move.begin(), child.move.end());
        nodes_[x].children.push_back(static_cast<int>(nodes_.size()));
        nodes_.push_back(std::move(child));
      }
    }
  }

  bool EveryoneActive() const {
    std::vector<bool> seen(c_.num_players, false);
    for (const Draft& d : nodes_) {
      for (int p : d.active) seen[p] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  bool IsAncestor(int a, int x) const {
    for (int cur = nodes_[x].parent; cur >= 0; cur = nodes_[cur].parent) {
      if (cur == a) return true;
    }
    return false;
  }

  std::vector<std::pair<int, int>> RecordOf(int player, int x) const {
    std::vector<std::pair<int, int>> out;
    for (int cur = x; nodes_[cur].parent >= 0; cur = nodes_[cur].parent) {
      const Draft& parent = nodes_[nodes_[cur].parent];
      for (size_t k = 0; k < parent.active.size(); ++k) {
        if (parent.active[k] != player) continue;
        for (const auto& [p, a] : nodes_[cur].move) {
          if (p == player) out.emplace_back(parent.infoset[k], a);
        }
      }
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  // Nodes are in breadth-first order, so ancestors are settled first.
  void AssignInfosets() {
    infosets_.clear();
    for (size_t x = 0; x < nodes_.size(); ++x) {
      Draft& d = nodes_[x];
      d.infoset.assign(d.active.size(), -1);
      for (size_t k = 0; k < d.active.size(); ++k) {
        const int p = d.active[k];
        auto record = RecordOf(p, static_cast<int>(x));
        std::vector<int> candidates;
        for (size_t s = 0; s < infosets_.size(); ++s) {
          const DraftInfoset& set = infosets_[s];
          if (set.owner != p || set.count != d.counts[k] ||
              set.record != record) {
            continue;
          }
          const bool related = std::any_of(
              set.members.begin(), set.members.end(),
              [&](int m) { return IsAncestor(m, static_cast<int>(x)); });
          if (!related) candidates.push_back(static_cast<int>(s));
        }
        if (!candidates.empty() && Uniform() < c_.infoset_merge_prob) {
          const int s =
              candidates[Int(0, static_cast<int>(candidates.size()) - 1)];
          infosets_[s].members.push_back(static_cast<int>(x));
          d.infoset[k] = s;
        } else {
          d.infoset[k] = static_cast<int>(infosets_.size());
          infosets_.push_back(
              DraftInfoset{p, d.counts[k], {static_cast<int>(x)}, record});
        }
      }
    }
  }

  static std::string Display(int n) {
    std::string s(1, static_cast<char>('a' + n % 26));
    if (n >= 26) s += std::to_string(n / 26);
    return s;
  }

  Game Assemble() const {
    // Displays are unique per player across information sets.
    std::vector<int> next(c_.num_players, 0);
    std::vector<std::vector<std::string>> names(infosets_.size());
    for (size_t s = 0; s < infosets_.size(); ++s) {
      for (int a = 0; a < infosets_[s].count; ++a) {
        names[s].push_back(Display(next[infosets_[s].owner]++));
      }
    }
    auto player = [](int p) { return std::to_string(p + 1); };
    auto id = [](int x) { return "n" + std::to_string(x); };
    GameBuilder b("random-" + std::to_string(c_.seed));
    for (int p = 0; p < c_.num_players; ++p) b.AddPlayer(player(p));
    for (size_t x = 0; x < nodes_.size(); ++x) {
      const Draft& d = nodes_[x];
      if (d.parent < 0) {
        b.AddRoot(id(0));
        continue;
      }
      const Draft& parent = nodes_[d.parent];
      std::vector<std::pair<std::string, std::string>> move;
      for (const auto& [p, a] : d.move) {
        const size_t k = static_cast<size_t>(
            std::find(parent.active.begin(), parent.active.end(), p) -
            parent.active.begin());
        move.emplace_back(player(p), names[parent.infoset[k]][a]);
      }
      b.AddNode(id(static_cast<int>(x)), id(d.parent), std::move(move));
    }
    for (size_t s = 0; s < infosets_.size(); ++s) {
      std::vector<std::string> members;
      for (int m : infosets_[s].members) members.push_back(id(m));
      const std::string iid = player(infosets_[s].owner) + "@" + members.front();
      b.AddInfoset(player(infosets_[s].owner), iid, std::move(members));
    }
    Game g = b.Build();
    ValidationReport report = Validate(g);
    if (!report.ok()) {
      throw ConsistencyError("generator produced an invalid game:\n" +
                             report.ToString());
    }
    return g;
  }

  const GeneratorConfig& c_;
  std::mt19937_64 rng_;
  std::vector<Draft> nodes_;
  std::vector<DraftInfoset> infosets_;
};

}  // namespace

void CheckConfig(const GeneratorConfig& c) {
  auto fail = [](const std::string& what) {
    throw QueryError("generator config: " + what);
  };
  if (c.num_players < 2 || c.num_players > 5) fail("num_players must be 2..5");
  if (c.max_depth < 1 || c.max_depth > 5) fail("max_depth must be 1..5");
  if (c.max_actions < 2 || c.max_actions > 3) fail("max_actions must be 2..3");
  auto prob = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!prob(c.simultaneity_prob)) fail("simultaneity_prob must be in [0,1]");
  if (!prob(c.infoset_merge_prob)) fail("infoset_merge_prob must be in [0,1]");
  if (!prob(c.expand_prob)) fail("expand_prob must be in [0,1]");
  if (c.max_nodes < 1) fail("max_nodes must be positive");
}

Game GenerateRandomGame(const GeneratorConfig& config) {
  CheckConfig(config);
  return Generator(config).Run();
}

}  // namespace egs
