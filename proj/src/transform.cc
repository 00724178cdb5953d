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

#include "egs/transform.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace egs {
namespace {

using MovePairs = std::vector<std::pair<std::string, std::string>>;

std::vector<int> TerminalCounts(const Game& game) {
  std::vector<int> count(game.num_nodes(), 0);
  for (NodeIndex h = game.num_nodes() - 1; h >= 0; --h) {
    const Node& n = game.node(h);
    if (n.terminal()) {
      count[h] = 1;
    } else {
      for (NodeIndex c : n.children) count[h] += count[c];
    }
  }
  return count;
}

std::vector<NodeIndex> InfosetTerminals(const Game& game, InfosetIndex k) {
  return TerminalSet(game, game.infoset(k).members);
}

// Emits the nodes and information set memberships of a rewritten game and
// assembles them into a new Game.
class Rebuilder {
 public:
  explicit Rebuilder(const Game& game) : g_(game) {
    for (const Node& n : g_.nodes()) used_.insert(n.id);
    for (const InfoSet& k : g_.infosets()) owner_of_[k.id] = k.owner;
  }

  std::string Fresh(std::string base) {
    while (!used_.insert(base).second) base += "'";
    return base;
  }

  MovePairs Move(NodeIndex x, PlayerIndex drop = -1) const {
    MovePairs out;
    for (const MoveEntry& e : g_.node(x).move) {
      if (e.player != drop) out.emplace_back(g_.players()[e.player], e.action);
    }
    return out;
  }

  // Adds a node standing for `origin`. No memberships are recorded.
  void AddNode(NodeIndex origin, const std::string& id,
               const std::string& parent, MovePairs move) {
    nodes_.push_back(Pending{id, parent, std::move(move)});
    const Node& n = g_.node(origin);
    if (n.terminal()) terminals_.emplace_back(id, n.terminal_name);
    node_map_.emplace_back(n.id, id);
  }

  // Puts `id` into the information sets `origin` has for its active players,
  // skipping `skip` and, if `only` is set, everyone else.
  void JoinActive(NodeIndex origin, const std::string& id,
                  PlayerIndex skip = -1, PlayerIndex only = -1) {
    const Node& n = g_.node(origin);
    for (size_t k = 0; k < n.active.size(); ++k) {
      if (n.active[k] == skip) continue;
      if (only >= 0 && n.active[k] != only) continue;
      Join(g_.infoset(n.infosets[k]).id, id);
    }
  }

  void Join(const std::string& infoset, const std::string& id) {
    members_[infoset].push_back(id);
  }

  // Emits `x` and its whole subtree unchanged, except for x's incoming move.
  void CopySubtree(NodeIndex x, const std::string& parent, MovePairs move) {
    const Node& n = g_.node(x);
    AddNode(x, n.id, parent, std::move(move));
    JoinActive(x, n.id);
    for (NodeIndex c : n.children) CopySubtree(c, n.id, Move(c));
  }

  // Copies the region between `x` and the cut for one fixed choice `chosen`
  // of player `i` at the cut. Region nodes become "<id>~<tag>" replicas in
  // their original information sets. Cut nodes lose player i: if i moved
  // alone there, the node is replaced by its `chosen` child.
  void CopyRegion(NodeIndex x, const std::string& tag,
                  const std::string& parent, MovePairs move,
                  const std::vector<bool>& cut, PlayerIndex i,
                  const std::string& chosen) {
    const Node& n = g_.node(x);
    if (n.terminal()) {
      throw InvalidSiteError("terminal " + n.terminal_name +
                             " bypasses the controlled nodes");
    }
    if (!cut[x]) {
      if (std::binary_search(n.active.begin(), n.active.end(), i)) {
        throw InvalidSiteError("player moves between the two sites at " +
                               n.id);
      }
      const std::string id = Fresh(n.id + "~" + tag);
      AddNode(x, id, parent, std::move(move));
      JoinActive(x, id);
      for (NodeIndex c : n.children) {
        CopyRegion(c, tag, id, Move(c), cut, i, chosen);
      }
      return;
    }
    std::vector<NodeIndex> picked;
    for (NodeIndex c : n.children) {
      const std::string* a = g_.ActionInMove(c, i);
      if (a != nullptr && *a == chosen) picked.push_back(c);
    }
    if (n.active.size() == 1) {
      CopySubtree(picked.front(), parent, std::move(move));
      return;
    }
    const std::string id = Fresh(n.id + "~" + tag);
    AddNode(x, id, parent, std::move(move));
    JoinActive(x, id, i);
    for (NodeIndex c : picked) CopySubtree(c, id, Move(c, i));
  }

  const std::vector<std::pair<std::string, std::string>>& node_map() const {
    return node_map_;
  }

  Game Finish() const {
    GameBuilder b(g_.name());
    for (const auto& p : g_.players()) b.AddPlayer(p);
    for (const Pending& n : nodes_) {
      if (n.parent.empty()) {
        b.AddRoot(n.id);
      } else {
        b.AddNode(n.id, n.parent, n.move);
      }
    }
    for (const auto& [id, name] : terminals_) b.SetTerminalName(id, name);
    for (const auto& [infoset, members] : members_) {
      b.AddInfoset(g_.players()[owner_of_.at(infoset)], infoset, members);
    }
    Game out = b.Build();
    ValidationReport report = Validate(out);
    if (!report.ok()) {
      throw ConsistencyError("transformation produced an invalid game:\n" +
                             report.ToString());
    }
    return out;
  }

  std::vector<std::pair<std::string, std::string>> TerminalIdentity() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (NodeIndex z : g_.terminals()) {
      out.emplace_back(g_.node(z).terminal_name, g_.node(z).terminal_name);
    }
    return out;
  }

 private:
  struct Pending {
    std::string id;
    std::string parent;
    MovePairs move;
  };

  const Game& g_;
  std::set<std::string> used_;
  std::map<std::string, PlayerIndex> owner_of_;
  std::vector<Pending> nodes_;
  std::vector<std::pair<std::string, std::string>> terminals_;
  std::map<std::string, std::vector<std::string>> members_;
  std::vector<std::pair<std::string, std::string>> node_map_;
};

struct ResolvedCoalescing {
  PlayerIndex player;
  InfosetIndex source;
  InfosetIndex target;
};

ResolvedCoalescing Resolve(const Game& game, const CoalescingSite& site) {
  ResolvedCoalescing r{};
  try {
    r.player = game.PlayerIndexOf(site.player);
    r.source = game.FindInfoset(site.source);
    r.target = game.FindInfoset(site.target);
  } catch (const QueryError& e) {
    throw InvalidSiteError(std::string("coalescing site: ") + e.what());
  }
  if (game.infoset(r.source).owner != r.player ||
      game.infoset(r.target).owner != r.player) {
    throw InvalidSiteError("coalescing site: information sets are not owned "
                           "by player " + site.player);
  }
  if (r.source == r.target) {
    throw InvalidSiteError("coalescing site: source equals target");
  }
  if (game.ActionIndex(r.source, site.pivot) < 0) {
    throw InvalidSiteError("coalescing site: pivot " + site.pivot +
                           " is not feasible at " + site.source);
  }
  if (TerminalsAfterAction(game, r.source, site.pivot) !=
      InfosetTerminals(game, r.target)) {
    throw InvalidSiteError("coalescing site: " + site.target +
                           " does not control " + site.source + " via " +
                           site.pivot);
  }
  return r;
}

struct ResolvedSimultanizing {
  PlayerIndex player;
  NodeIndex history;
  InfosetIndex infoset;
  std::vector<NodeIndex> dominating;
};

ResolvedSimultanizing Resolve(const Game& game,
                              const SimultanizingSite& site) {
  ResolvedSimultanizing r{};
  try {
    r.player = game.PlayerIndexOf(site.player);
    r.history = game.FindNode(site.history);
    for (const auto& id : site.dominating) {
      r.dominating.push_back(game.FindNode(id));
    }
  } catch (const QueryError& e) {
    throw InvalidSiteError(std::string("simultanizing site: ") + e.what());
  }
  const Node& h = game.node(r.history);
  if (h.terminal()) {
    throw InvalidSiteError("simultanizing site: history is terminal");
  }
  if (std::binary_search(h.active.begin(), h.active.end(), r.player)) {
    throw InvalidSiteError("simultanizing site: player " + site.player +
                           " is already active at " + h.id);
  }
  if (r.dominating.empty()) {
    throw InvalidSiteError("simultanizing site: empty dominating set");
  }
  std::sort(r.dominating.begin(), r.dominating.end());
  r.infoset = game.InfosetAt(r.dominating.front(), r.player);
  for (NodeIndex d : r.dominating) {
    if (game.InfosetAt(d, r.player) != r.infoset || r.infoset == kNoInfoset) {
      throw InvalidSiteError("simultanizing site: dominating nodes are not "
                             "in one information set of " + site.player);
    }
    if (!game.IsStrictAncestor(r.history, d)) {
      throw InvalidSiteError("simultanizing site: " + game.node(d).id +
                             " does not follow " + h.id);
    }
  }
  for (NodeIndex m : game.infoset(r.infoset).members) {
    if (game.IsStrictAncestor(r.history, m) &&
        !std::binary_search(r.dominating.begin(), r.dominating.end(), m)) {
      throw InvalidSiteError("simultanizing site: dominating set omits " +
                             game.node(m).id);
    }
  }
  const NodeIndex hh = r.history;
  if (TerminalSet(game, r.dominating) !=
      TerminalSet(game, std::span<const NodeIndex>(&hh, 1))) {
    throw InvalidSiteError("simultanizing site: dominating set does not "
                           "cover every terminal of " + h.id);
  }
  return r;
}

}  // namespace

const char* KindName(TraceStep::Kind kind) {
  switch (kind) {
    case TraceStep::Kind::kCoalesce:
      return "coalesce";
    case TraceStep::Kind::kSimultanize:
      return "simultanize";
    case TraceStep::Kind::kSplit:
      return "split";
  }
  return "unknown";
}

std::vector<CoalescingSite> FindCoalescingSites(const Game& game) {
  std::vector<std::vector<NodeIndex>> zk;
  for (InfosetIndex k = 0; k < static_cast<InfosetIndex>(game.infosets().size());
       ++k) {
    zk.push_back(InfosetTerminals(game, k));
  }
  std::vector<CoalescingSite> out;
  for (PlayerIndex p = 0; p < game.num_players(); ++p) {
    const auto& sets = game.InfosetsOf(p);
    for (InfosetIndex s : sets) {
      for (const std::string& a : game.infoset(s).actions) {
        const auto after = TerminalsAfterAction(game, s, a);
        for (InfosetIndex t : sets) {
          if (t != s && zk[t] == after) {
            out.push_back(CoalescingSite{game.players()[p], game.infoset(s).id,
                                         game.infoset(t).id, a});
          }
        }
      }
    }
  }
  return out;
}

std::vector<SimultanizingSite> FindSimultanizingSites(const Game& game) {
  const std::vector<int> count = TerminalCounts(game);
  std::vector<SimultanizingSite> out;
  for (NodeIndex h = 0; h < game.num_nodes(); ++h) {
    const Node& n = game.node(h);
    if (n.terminal()) continue;
    // Terminals covered by each information set strictly below h. Members
    // of one set are unrelated, so their terminal sets are disjoint.
    std::map<InfosetIndex, int> covered;
    for (NodeIndex x = h + 1; x < n.subtree_end; ++x) {
      const Node& m = game.node(x);
      for (size_t k = 0; k < m.active.size(); ++k) {
        if (!std::binary_search(n.active.begin(), n.active.end(),
                                m.active[k])) {
          covered[m.infosets[k]] += count[x];
        }
      }
    }
    std::map<PlayerIndex, SimultanizingSite> found;
    for (const auto& [k, z] : covered) {
      if (z != count[h]) continue;
      const InfoSet& set = game.infoset(k);
      SimultanizingSite site{game.players()[set.owner], n.id, {}};
      for (NodeIndex m : set.members) {
        if (game.IsStrictAncestor(h, m)) {
          site.dominating.push_back(game.node(m).id);
        }
      }
      found.emplace(set.owner, std::move(site));
    }
    for (auto& [p, site] : found) out.push_back(std::move(site));
  }
  return out;
}

void CheckSite(const Game& game, const CoalescingSite& site) {
  Resolve(game, site);
}

void CheckSite(const Game& game, const SimultanizingSite& site) {
  Resolve(game, site);
}

TransformResult Coalesce(const Game& game, const CoalescingSite& site) {
  const ResolvedCoalescing r = Resolve(game, site);
  const InfoSet& source = game.infoset(r.source);
  const InfoSet& target = game.infoset(r.target);

  // Target actions keep their display unless it clashes with a source action
  // that survives.
  std::set<std::string> taken;
  for (const auto& a : source.actions) {
    if (a != site.pivot) taken.insert(a);
  }
  std::map<std::string, std::string> renamed;
  for (const auto& b : target.actions) {
    std::string d = b;
    while (taken.count(d)) d += "'";
    taken.insert(d);
    renamed[b] = d;
  }

  std::vector<bool> cut(game.num_nodes(), false);
  for (NodeIndex m : target.members) cut[m] = true;
  std::vector<bool> is_source(game.num_nodes(), false);
  for (NodeIndex m : source.members) is_source[m] = true;

  Rebuilder rb(game);
  const std::string& player = site.player;
  auto walk = [&](auto&& self, NodeIndex x, const std::string& parent,
                  MovePairs move) -> void {
    const Node& n = game.node(x);
    rb.AddNode(x, n.id, parent, std::move(move));
    rb.JoinActive(x, n.id);
    for (NodeIndex c : n.children) {
      const std::string* a = game.ActionInMove(c, r.player);
      if (!is_source[x] || a == nullptr || *a != site.pivot) {
        self(self, c, n.id, rb.Move(c));
        continue;
      }
      for (const auto& b : target.actions) {
        MovePairs m = rb.Move(c);
        for (auto& [p, action] : m) {
          if (p == player) action = renamed[b];
        }
        rb.CopyRegion(c, b, n.id, std::move(m), cut, r.player, b);
      }
    }
  };
  walk(walk, game.root(), "", {});

  TransformResult out{rb.Finish(), {}};
  out.step.kind = TraceStep::Kind::kCoalesce;
  out.step.coalescing = site;
  out.step.node_map = rb.node_map();
  out.step.terminal_map = rb.TerminalIdentity();
  return out;
}

TransformResult Simultanize(const Game& game, const SimultanizingSite& site) {
  const ResolvedSimultanizing r = Resolve(game, site);
  const InfoSet& set = game.infoset(r.infoset);
  std::vector<bool> cut(game.num_nodes(), false);
  for (NodeIndex d : r.dominating) cut[d] = true;

  Rebuilder rb(game);
  auto walk = [&](auto&& self, NodeIndex x, const std::string& parent,
                  MovePairs move) -> void {
    const Node& n = game.node(x);
    rb.AddNode(x, n.id, parent, std::move(move));
    rb.JoinActive(x, n.id);
    if (x != r.history) {
      for (NodeIndex c : n.children) self(self, c, n.id, rb.Move(c));
      return;
    }
    rb.Join(set.id, n.id);
    for (NodeIndex c : n.children) {
      for (const auto& a : set.actions) {
        MovePairs m = rb.Move(c);
        m.emplace_back(site.player, a);
        rb.CopyRegion(c, a, n.id, std::move(m), cut, r.player, a);
      }
    }
  };
  walk(walk, game.root(), "", {});

  TransformResult out{rb.Finish(), {}};
  out.step.kind = TraceStep::Kind::kSimultanize;
  out.step.simultanizing = site;
  out.step.node_map = rb.node_map();
  out.step.terminal_map = rb.TerminalIdentity();
  return out;
}

TransformResult SplitSimultaneous(const Game& game, const std::string& history,
                                  const std::string& first) {
  NodeIndex h;
  PlayerIndex f;
  try {
    h = game.FindNode(history);
    f = game.PlayerIndexOf(first);
  } catch (const QueryError& e) {
    throw InvalidSiteError(std::string("split: ") + e.what());
  }
  const Node& hn = game.node(h);
  if (hn.active.size() < 2 ||
      !std::binary_search(hn.active.begin(), hn.active.end(), f)) {
    throw InvalidSiteError("split: " + history +
                           " is not a simultaneous move of " + first);
  }
  const InfoSet& own = game.infoset(game.InfosetAt(h, f));

  Rebuilder rb(game);
  auto walk = [&](auto&& self, NodeIndex x, const std::string& parent,
                  MovePairs move) -> void {
    const Node& n = game.node(x);
    rb.AddNode(x, n.id, parent, std::move(move));
    if (x != h) {
      rb.JoinActive(x, n.id);
      for (NodeIndex c : n.children) self(self, c, n.id, rb.Move(c));
      return;
    }
    rb.JoinActive(x, n.id, -1, f);
    for (const auto& a : own.actions) {
      const std::string mid = rb.Fresh(n.id + "~" + a);
      rb.AddNode(x, mid, n.id, {{first, a}});
      rb.JoinActive(x, mid, f);
      for (NodeIndex c : n.children) {
        if (*game.ActionInMove(c, f) == a) self(self, c, mid, rb.Move(c, f));
      }
    }
  };
  walk(walk, game.root(), "", {});

  TransformResult out{rb.Finish(), {}};
  out.step.kind = TraceStep::Kind::kSplit;
  out.step.split_history = history;
  out.step.split_first = first;
  out.step.node_map = rb.node_map();
  out.step.terminal_map = rb.TerminalIdentity();
  return out;
}

ChainResult ClassicInterchange(const Game& game,
                               const SimultanizingSite& site) {
  TransformResult joined = Simultanize(game, site);
  TransformResult split =
      SplitSimultaneous(joined.game, site.history, site.player);
  ChainResult out{std::move(split.game), {}};
  out.trace.steps.push_back(std::move(joined.step));
  out.trace.steps.push_back(std::move(split.step));
  return out;
}

std::string Describe(const CoalescingSite& site) {
  return "coalesce player=" + site.player + " source=" + site.source +
         " target=" + site.target + " pivot=" + site.pivot;
}

std::string Describe(const SimultanizingSite& site) {
  std::string out = "simultanize player=" + site.player +
                    " history=" + site.history + " dominating={";
  for (size_t k = 0; k < site.dominating.size(); ++k) {
    if (k) out += ",";
    out += site.dominating[k];
  }
  return out + "}";
}

long long TerminationMeasure(const Game& game) {
  const std::vector<int> count = TerminalCounts(game);
  long long m = 0;
  for (NodeIndex h = 0; h < game.num_nodes(); ++h) {
    const Node& n = game.node(h);
    m += static_cast<long long>(n.active.size()) * (n.depth + 1) * count[h];
  }
  return m;
}

int ActionCountSum(const Game& game, PlayerIndex player) {
  int sum = 0;
  for (InfosetIndex k : game.InfosetsOf(player)) {
    sum += static_cast<int>(game.infoset(k).actions.size());
  }
  return sum;
}

}  // namespace egs
