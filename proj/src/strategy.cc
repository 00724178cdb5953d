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

#include "egs/strategy.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace egs {
namespace {

void CheckPlayer(const Game& game, PlayerIndex player) {
  if (player < 0 || player >= game.num_players()) {
    throw QueryError("unknown player index " + std::to_string(player));
  }
}

// Record of the first member of each own information set, as (rank, action
// index) pairs. Under perfect recall every member has the same record.
std::vector<std::vector<std::pair<int, int>>> OwnRecords(const Game& game,
                                                         PlayerIndex player) {
  std::vector<std::vector<std::pair<int, int>>> out;
  for (InfosetIndex k : game.InfosetsOf(player)) {
    std::vector<std::pair<int, int>> rec;
    for (const RecordEntry& e :
         Record(game, player, game.infoset(k).members.front())) {
      rec.emplace_back(game.InfosetRank(e.infoset),
                       game.ActionIndex(e.infoset, e.action));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

bool Compatible(const std::vector<std::pair<int, int>>& record,
                const std::vector<int>& choices) {
  return std::all_of(record.begin(), record.end(), [&](const auto& e) {
    return choices[e.first] == e.second;
  });
}

// Plays per-player choice vectors (indexed by information set rank). A
// negative choice at a reached information set is a logic error.
NodeIndex PlayChoices(const Game& game,
                      const std::vector<const std::vector<int>*>& choices) {
  NodeIndex h = game.root();
  std::vector<int> idx;
  while (!game.node(h).terminal()) {
    const Node& n = game.node(h);
    idx.clear();
    for (size_t k = 0; k < n.active.size(); ++k) {
      const int c = (*choices[n.active[k]])[game.InfosetRank(n.infosets[k])];
      if (c < 0) {
        throw ConsistencyError("plan of player " +
                               game.players()[n.active[k]] +
                               " does not cover reached node " + n.id);
      }
      idx.push_back(c);
    }
    h = game.ChildFor(h, idx);
  }
  return h;
}

// Makes labels unique by qualifying every part with its information set id
// when two of them print the same.
void QualifyIfAmbiguous(const Game& game, PlayerIndex player,
                        const std::vector<std::vector<int>>& plans,
                        std::vector<std::string>& labels) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() == labels.size()) return;
  const auto& sets = game.InfosetsOf(player);
  for (size_t s = 0; s < plans.size(); ++s) {
    std::string label;
    for (size_t r = 0; r < sets.size(); ++r) {
      if (plans[s][r] < 0) continue;
      if (!label.empty()) label += ".";
      label += game.infoset(sets[r]).actions[plans[s][r]] + "@" +
               game.infoset(sets[r]).id;
    }
    labels[s] = label;
  }
}

std::string PlanLabel(const Game& game, PlayerIndex player,
                      const std::vector<int>& plan) {
  const auto& sets = game.InfosetsOf(player);
  std::string label;
  for (size_t r = 0; r < sets.size(); ++r) {
    if (plan[r] < 0) continue;
    if (!label.empty()) label += ".";
    label += game.infoset(sets[r]).actions[plan[r]];
  }
  return label;
}

}  // namespace

std::string StrategyLabel(const Game& game, const Strategy& s) {
  return PlanLabel(game, s.owner, s.choices);
}

std::vector<Strategy> EnumerateStrategies(const Game& game,
                                          PlayerIndex player) {
  CheckPlayer(game, player);
  const auto& sets = game.InfosetsOf(player);
  std::vector<Strategy> out;
  Strategy cur{player, std::vector<int>(sets.size(), 0)};
  while (true) {
    out.push_back(cur);
    size_t r = sets.size();
    while (r > 0) {
      --r;
      if (++cur.choices[r] <
          static_cast<int>(game.infoset(sets[r]).actions.size())) {
        break;
      }
      cur.choices[r] = 0;
      if (r == 0) return out;
    }
    if (sets.empty()) return out;
  }
}

NodeIndex Play(const Game& game, const std::vector<Strategy>& profile) {
  if (static_cast<int>(profile.size()) != game.num_players()) {
    throw QueryError("profile needs one strategy per player");
  }
  std::vector<const std::vector<int>*> choices;
  for (size_t p = 0; p < profile.size(); ++p) {
    if (profile[p].owner != static_cast<PlayerIndex>(p)) {
      throw QueryError("profile entry " + std::to_string(p) +
                       " belongs to another player");
    }
    choices.push_back(&profile[p].choices);
  }
  return PlayChoices(game, choices);
}

bool BehaviorallyEquivalent(const Game& game, const Strategy& s,
                            const Strategy& t) {
  if (s.owner != t.owner) throw QueryError("strategies of different players");
  const PlayerIndex i = s.owner;
  std::vector<std::vector<Strategy>> all(game.num_players());
  for (PlayerIndex p = 0; p < game.num_players(); ++p) {
    if (p != i) all[p] = EnumerateStrategies(game, p);
  }
  std::vector<size_t> pos(game.num_players(), 0);
  std::vector<Strategy> profile(game.num_players());
  while (true) {
    for (PlayerIndex p = 0; p < game.num_players(); ++p) {
      if (p != i) profile[p] = all[p][pos[p]];
    }
    profile[i] = s;
    const NodeIndex zs = Play(game, profile);
    profile[i] = t;
    if (Play(game, profile) != zs) return false;
    PlayerIndex p = game.num_players() - 1;
    for (; p >= 0; --p) {
      if (p == i) continue;
      if (++pos[p] < all[p].size()) break;
      pos[p] = 0;
    }
    if (p < 0) return true;
  }
}

std::vector<bool> ConsistentInfosets(const Game& game, const Strategy& s) {
  const auto records = OwnRecords(game, s.owner);
  std::vector<bool> out(records.size());
  for (size_t r = 0; r < records.size(); ++r) {
    out[r] = Compatible(records[r], s.choices);
  }
  return out;
}

bool KuhnEquivalent(const Game& game, const Strategy& s, const Strategy& t) {
  if (s.owner != t.owner) throw QueryError("strategies of different players");
  const auto cs = ConsistentInfosets(game, s);
  const auto ct = ConsistentInfosets(game, t);
  if (cs != ct) return false;
  for (size_t r = 0; r < cs.size(); ++r) {
    if (cs[r] && s.choices[r] != t.choices[r]) return false;
  }
  return true;
}

std::vector<Strategy> ReducedStrategy::Members(const Game& game) const {
  std::vector<Strategy> out;
  for (Strategy& s : EnumerateStrategies(game, owner)) {
    if (Contains(s)) out.push_back(std::move(s));
  }
  return out;
}

bool ReducedStrategy::Contains(const Strategy& s) const {
  if (s.owner != owner || s.choices.size() != plan.size()) return false;
  for (size_t r = 0; r < plan.size(); ++r) {
    if (plan[r] >= 0 && plan[r] != s.choices[r]) return false;
  }
  // Unreached sets must be exactly the plan's unreached sets; this follows
  // from agreement on the reached ones, since reachability only depends on
  // earlier choices.
  return true;
}

std::vector<ReducedStrategy> ReducedStrategies(const Game& game,
                                               PlayerIndex player) {
  CheckPlayer(game, player);
  const auto& sets = game.InfosetsOf(player);
  const auto records = OwnRecords(game, player);
  std::vector<std::vector<int>> plans;
  std::vector<int> plan(sets.size(), -1);
  // Sets are in topological order, so a record only mentions earlier ranks.
  auto extend = [&](auto&& self, size_t r) -> void {
    if (r == sets.size()) {
      plans.push_back(plan);
      return;
    }
    if (!Compatible(records[r], plan)) {
      plan[r] = -1;
      self(self, r + 1);
      return;
    }
    const int n = static_cast<int>(game.infoset(sets[r]).actions.size());
    for (int a = 0; a < n; ++a) {
      plan[r] = a;
      self(self, r + 1);
    }
    plan[r] = -1;
  };
  extend(extend, 0);

  std::vector<std::string> labels;
  for (const auto& p : plans) labels.push_back(PlanLabel(game, player, p));
  QualifyIfAmbiguous(game, player, plans, labels);

  std::vector<ReducedStrategy> out;
  for (size_t s = 0; s < plans.size(); ++s) {
    out.push_back(ReducedStrategy{player, plans[s], labels[s]});
  }
  std::sort(out.begin(), out.end(),
            [](const ReducedStrategy& a, const ReducedStrategy& b) {
              return a.label < b.label;
            });
  return out;
}

std::vector<ReducedStrategy> ConsistentStrategies(const Game& game,
                                                  PlayerIndex player,
                                                  InfosetIndex k) {
  CheckPlayer(game, player);
  if (game.infoset(k).owner != player) {
    throw QueryError("information set " + game.infoset(k).id +
                     " is not owned by player " + game.players()[player]);
  }
  const int r = game.InfosetRank(k);
  std::vector<ReducedStrategy> out;
  for (ReducedStrategy& s : ReducedStrategies(game, player)) {
    if (s.plan[r] >= 0) out.push_back(std::move(s));
  }
  return out;
}

// --- Normal forms -----------------------------------------------------------

size_t NormalForm::num_profiles() const {
  size_t n = 1;
  for (const auto& s : strategies) n *= s.size();
  return n;
}

size_t NormalForm::ProfileIndex(const std::vector<int>& profile) const {
  size_t index = 0;
  for (size_t p = 0; p < strategies.size(); ++p) {
    index = index * strategies[p].size() + static_cast<size_t>(profile[p]);
  }
  return index;
}

std::vector<int> NormalForm::Profile(size_t index) const {
  std::vector<int> out(strategies.size());
  for (size_t p = strategies.size(); p-- > 0;) {
    out[p] = static_cast<int>(index % strategies[p].size());
    index /= strategies[p].size();
  }
  return out;
}

void NormalForm::CheckWellFormed() const {
  if (players.empty()) throw QueryError("normal form has no players");
  if (strategies.size() != players.size()) {
    throw QueryError("normal form needs one strategy list per player");
  }
  for (size_t p = 0; p < players.size(); ++p) {
    if (strategies[p].empty()) {
      throw QueryError("player " + players[p] + " has no strategies");
    }
  }
  if (outcome.size() != num_profiles()) {
    throw QueryError("outcome table is not total");
  }
  std::vector<bool> hit(terminals.size(), false);
  for (int z : outcome) {
    if (z < 0 || z >= static_cast<int>(terminals.size())) {
      throw QueryError("outcome refers to an unknown terminal");
    }
    hit[z] = true;
  }
  for (size_t z = 0; z < terminals.size(); ++z) {
    if (!hit[z]) {
      throw QueryError("terminal " + terminals[z] + " is never reached");
    }
  }
}

namespace {

// Throws once the running product of `sizes` passes kMaxProfiles.
void CheckTableSize(const std::vector<size_t>& sizes) {
  size_t n = 1;
  for (size_t k : sizes) {
    if (k != 0 && n > kMaxProfiles / k) {
      throw QueryError("normal form exceeds " + std::to_string(kMaxProfiles) +
                       " profiles");
    }
    n *= k;
  }
}

NormalForm Tabulate(const Game& game,
                    const std::vector<std::vector<std::vector<int>>>& choices,
                    std::vector<std::vector<std::string>> labels) {
  NormalForm nf;
  nf.players = game.players();
  nf.strategies = std::move(labels);
  std::vector<size_t> sizes;
  for (const auto& s : nf.strategies) sizes.push_back(s.size());
  CheckTableSize(sizes);
  for (NodeIndex z : game.terminals()) {
    nf.terminals.push_back(game.node(z).terminal_name);
  }
  std::sort(nf.terminals.begin(), nf.terminals.end(), NaturalLess);
  std::map<std::string, int> term_index;
  for (size_t z = 0; z < nf.terminals.size(); ++z) {
    term_index[nf.terminals[z]] = static_cast<int>(z);
  }
  const size_t n = nf.num_profiles();
  nf.outcome.resize(n);
  std::vector<const std::vector<int>*> profile(game.num_players());
  for (size_t idx = 0; idx < n; ++idx) {
    const std::vector<int> pos = nf.Profile(idx);
    for (PlayerIndex p = 0; p < game.num_players(); ++p) {
      profile[p] = &choices[p][pos[p]];
    }
    nf.outcome[idx] =
        term_index.at(game.node(PlayChoices(game, profile)).terminal_name);
  }
  return nf;
}

}  // namespace

ReducedNormalForm ComputeReducedNormalForm(const Game& game) {
  std::vector<std::vector<std::vector<int>>> choices(game.num_players());
  std::vector<std::vector<std::string>> labels(game.num_players());
  for (PlayerIndex p = 0; p < game.num_players(); ++p) {
    for (const ReducedStrategy& s : ReducedStrategies(game, p)) {
      choices[p].push_back(s.plan);
      labels[p].push_back(s.label);
    }
  }
  return Tabulate(game, choices, std::move(labels));
}

NormalForm ComputeNormalForm(const Game& game) {
  std::vector<std::vector<std::vector<int>>> choices(game.num_players());
  std::vector<std::vector<std::string>> labels(game.num_players());
  std::vector<size_t> sizes;
  for (PlayerIndex p = 0; p < game.num_players(); ++p) {
    for (InfosetIndex k : game.InfosetsOf(p)) {
      sizes.push_back(game.infoset(k).actions.size());
    }
  }
  CheckTableSize(sizes);
  for (PlayerIndex p = 0; p < game.num_players(); ++p) {
    const auto all = EnumerateStrategies(game, p);
    std::vector<std::vector<int>> plans;
    std::vector<std::string> names;
    for (const Strategy& s : all) {
      plans.push_back(s.choices);
      names.push_back(StrategyLabel(game, s));
    }
    QualifyIfAmbiguous(game, p, plans, names);
    std::vector<size_t> order(all.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return names[a] < names[b]; });
    for (size_t k : order) {
      choices[p].push_back(plans[k]);
      labels[p].push_back(names[k]);
    }
  }
  return Tabulate(game, choices, std::move(labels));
}

bool NaturalLess(const std::string& a, const std::string& b) {
  size_t i = 0;
  size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      size_t ie = i;
      size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie])))
        ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je])))
        ++je;
      // Compare numerically without overflow: strip leading zeros, then by
      // length, then lexicographically.
      size_t is = i;
      size_t js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      if (ie - is != je - js) return ie - is < je - js;
      const int c = a.compare(is, ie - is, b, js, je - js);
      if (c != 0) return c < 0;
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

}  // namespace egs
