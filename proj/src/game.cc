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

#include "egs/game.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace egs {
namespace {

std::string Quote(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

// --- Game ------------------------------------------------------------------

PlayerIndex Game::PlayerIndexOf(std::string_view name) const {
  auto it = std::lower_bound(players_.begin(), players_.end(), name);
  if (it == players_.end() || *it != name) {
    throw QueryError("unknown player " + Quote(name));
  }
  return static_cast<PlayerIndex>(it - players_.begin());
}

NodeIndex Game::FindNode(std::string_view id) const {
  auto it = node_by_id_.find(id);
  if (it == node_by_id_.end()) throw QueryError("unknown node " + Quote(id));
  return it->second;
}

bool Game::HasNode(std::string_view id) const {
  return node_by_id_.find(id) != node_by_id_.end();
}

InfosetIndex Game::FindInfoset(std::string_view id) const {
  auto it = infoset_by_id_.find(id);
  if (it == infoset_by_id_.end()) {
    throw QueryError("unknown information set " + Quote(id));
  }
  return it->second;
}

NodeIndex Game::FindTerminal(std::string_view name) const {
  auto it = terminal_by_name_.find(name);
  if (it == terminal_by_name_.end()) {
    throw QueryError("unknown terminal " + Quote(name));
  }
  return it->second;
}

InfosetIndex Game::InfosetAt(NodeIndex h, PlayerIndex player) const {
  const Node& n = nodes_.at(h);
  for (size_t k = 0; k < n.active.size(); ++k) {
    if (n.active[k] == player) return n.infosets[k];
  }
  // Invalid games may list members where the owner is not active.
  for (InfosetIndex k : player_infosets_.at(player)) {
    const auto& m = infosets_[k].members;
    if (std::binary_search(m.begin(), m.end(), h)) return k;
  }
  return kNoInfoset;
}

int Game::ActionIndex(InfosetIndex k, std::string_view display) const {
  const auto& actions = infosets_.at(k).actions;
  auto it = std::lower_bound(actions.begin(), actions.end(), display);
  if (it == actions.end() || *it != display) return -1;
  return static_cast<int>(it - actions.begin());
}

const std::string* Game::ActionInMove(NodeIndex child,
                                      PlayerIndex player) const {
  for (const MoveEntry& e : nodes_.at(child).move) {
    if (e.player == player) return &e.action;
  }
  return nullptr;
}

NodeIndex Game::ChildFor(NodeIndex h, std::span<const int> action_index) const {
  const Node& n = nodes_.at(h);
  if (action_index.size() != n.active.size()) {
    throw QueryError("action profile arity mismatch at node " + Quote(n.id));
  }
  size_t offset = 0;
  for (size_t k = 0; k < n.active.size(); ++k) {
    const size_t radix = infosets_[n.infosets[k]].actions.size();
    offset = offset * radix + static_cast<size_t>(action_index[k]);
  }
  if (offset >= n.children.size()) {
    throw ConsistencyError("child profile out of range at node " +
                           Quote(n.id));
  }
  NodeIndex c = n.children[offset];
  const Move& move = nodes_[c].move;
  for (size_t k = 0; k < n.active.size(); ++k) {
    const auto& expected = infosets_[n.infosets[k]].actions[action_index[k]];
    if (move[k].player != n.active[k] || move[k].action != expected) {
      throw ConsistencyError("child profiles of node " + Quote(n.id) +
                             " do not form a product");
    }
  }
  return c;
}

int Game::Height() const {
  int h = 0;
  for (NodeIndex z : terminals_) h = std::max(h, nodes_[z].depth);
  return h;
}

// --- GameBuilder ------------------------------------------------------------

GameBuilder GameBuilder::FromGame(const Game& game) {
  GameBuilder b(game.name());
  for (const auto& p : game.players()) b.AddPlayer(p);
  for (const Node& n : game.nodes()) {
    if (n.parent == kNoNode) {
      b.AddRoot(n.id);
    } else {
      std::vector<std::pair<std::string, std::string>> move;
      for (const auto& e : n.move) {
        move.emplace_back(game.players()[e.player], e.action);
      }
      b.AddNode(n.id, game.node(n.parent).id, std::move(move));
    }
    if (n.terminal()) b.SetTerminalName(n.id, n.terminal_name);
  }
  for (const InfoSet& k : game.infosets()) {
    std::vector<std::string> members;
    for (NodeIndex m : k.members) members.push_back(game.node(m).id);
    b.AddInfoset(game.players()[k.owner], k.id, std::move(members));
  }
  return b;
}

void GameBuilder::AddPlayer(std::string player) {
  players_.push_back(std::move(player));
}

void GameBuilder::AddRoot(std::string id) {
  if (node_pos_.count(id)) {
    throw StructureError("duplicate node id " + Quote(id));
  }
  node_pos_[id] = nodes_.size();
  nodes_.push_back(PendingNode{std::move(id), "", {}, true});
}

void GameBuilder::AddNode(
    std::string id, std::string parent,
    std::vector<std::pair<std::string, std::string>> move) {
  if (node_pos_.count(id)) {
    throw StructureError("duplicate node id " + Quote(id));
  }
  node_pos_[id] = nodes_.size();
  nodes_.push_back(
      PendingNode{std::move(id), std::move(parent), std::move(move), false});
}

void GameBuilder::SetMove(
    const std::string& id,
    std::vector<std::pair<std::string, std::string>> move) {
  auto it = node_pos_.find(id);
  if (it == node_pos_.end() || nodes_[it->second].is_root) {
    throw StructureError("no non-root node " + Quote(id));
  }
  nodes_[it->second].move = std::move(move);
}

void GameBuilder::SetTerminalName(std::string id, std::string name) {
  terminal_names_.emplace_back(std::move(id), std::move(name));
}

void GameBuilder::AddInfoset(std::string player, std::string id,
                             std::vector<std::string> members) {
  infosets_.push_back(
      PendingInfoset{std::move(player), std::move(id), std::move(members)});
}

Game GameBuilder::Build() const {
  Game g;
  g.name_ = name_;

  // Players.
  g.players_ = players_;
  std::sort(g.players_.begin(), g.players_.end());
  if (g.players_.empty()) throw StructureError("no players");
  for (size_t i = 0; i < g.players_.size(); ++i) {
    if (g.players_[i].empty()) throw StructureError("empty player id");
    if (i > 0 && g.players_[i] == g.players_[i - 1]) {
      throw StructureError("duplicate player " + Quote(g.players_[i]));
    }
  }
  auto player_index = [&](const std::string& p) -> PlayerIndex {
    auto it = std::lower_bound(g.players_.begin(), g.players_.end(), p);
    if (it == g.players_.end() || *it != p) {
      throw StructureError("unknown player " + Quote(p));
    }
    return static_cast<PlayerIndex>(it - g.players_.begin());
  };

  // Tree shape.
  if (nodes_.empty()) throw StructureError("no nodes");
  const size_t n = nodes_.size();
  size_t root = n;
  std::vector<Move> moves(n);
  std::vector<std::vector<size_t>> kids(n);
  for (size_t i = 0; i < n; ++i) {
    const PendingNode& p = nodes_[i];
    if (p.id.empty()) throw StructureError("empty node id");
    if (p.is_root) {
      if (root != n) {
        throw StructureError("second root " + Quote(p.id) + " (first is " +
                             Quote(nodes_[root].id) + ")");
      }
      root = i;
      continue;
    }
    auto it = node_pos_.find(p.parent);
    if (it == node_pos_.end()) {
      throw StructureError("node " + Quote(p.id) + " has unknown parent " +
                           Quote(p.parent));
    }
    kids[it->second].push_back(i);
    if (p.move.empty()) {
      throw StructureError("node " + Quote(p.id) + " has an empty move");
    }
    for (const auto& [player, action] : p.move) {
      if (action.empty()) {
        throw StructureError("node " + Quote(p.id) + " has an empty action");
      }
      moves[i].push_back(MoveEntry{player_index(player), action});
    }
    std::sort(moves[i].begin(), moves[i].end());
    for (size_t k = 1; k < moves[i].size(); ++k) {
      if (moves[i][k].player == moves[i][k - 1].player) {
        throw StructureError("node " + Quote(p.id) +
                             " assigns two actions to player " +
                             Quote(g.players_[moves[i][k].player]));
      }
    }
  }
  if (root == n) throw StructureError("no root node");
  for (auto& k : kids) {
    std::stable_sort(k.begin(), k.end(), [&](size_t a, size_t b) {
      return moves[a] < moves[b];
    });
  }

  // Depth-first preorder. Nodes unreachable from the root sit on a cycle.
  std::vector<size_t> order;
  order.reserve(n);
  std::vector<NodeIndex> index_of(n, kNoNode);
  {
    std::vector<size_t> stack{root};
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      index_of[cur] = static_cast<NodeIndex>(order.size());
      order.push_back(cur);
      for (auto it = kids[cur].rbegin(); it != kids[cur].rend(); ++it) {
        stack.push_back(*it);
      }
    }
  }
  if (order.size() != n) {
    for (size_t i = 0; i < n; ++i) {
      if (index_of[i] == kNoNode) {
        throw StructureError("node " + Quote(nodes_[i].id) +
                             " is not connected to the root (cycle)");
      }
    }
  }
  g.nodes_.resize(n);
  for (size_t pos = 0; pos < n; ++pos) {
    const size_t src = order[pos];
    Node& node = g.nodes_[pos];
    node.id = nodes_[src].id;
    node.move = moves[src];
    node.parent = nodes_[src].is_root
                      ? kNoNode
                      : index_of[node_pos_.at(nodes_[src].parent)];
    for (size_t c : kids[src]) node.children.push_back(index_of[c]);
    g.node_by_id_[node.id] = static_cast<NodeIndex>(pos);
  }
  for (NodeIndex i = static_cast<NodeIndex>(n) - 1; i >= 0; --i) {
    Node& node = g.nodes_[i];
    node.subtree_end = i + 1;
    for (NodeIndex c : node.children) {
      node.subtree_end = std::max(node.subtree_end, g.nodes_[c].subtree_end);
    }
  }
  for (NodeIndex i = 1; i < static_cast<NodeIndex>(n); ++i) {
    g.nodes_[i].depth = g.nodes_[g.nodes_[i].parent].depth + 1;
  }

  // Terminal names.
  std::set<std::string> used_names;
  for (const auto& [id, name] : terminal_names_) {
    auto it = g.node_by_id_.find(id);
    if (it == g.node_by_id_.end()) {
      throw StructureError("terminal name for unknown node " + Quote(id));
    }
    Node& node = g.nodes_[it->second];
    if (!node.terminal()) {
      throw StructureError("node " + Quote(id) +
                           " has children and cannot carry terminal name " +
                           Quote(name));
    }
    if (name.empty()) throw StructureError("empty terminal name");
    if (!node.terminal_name.empty() && node.terminal_name != name) {
      throw StructureError("node " + Quote(id) + " named twice");
    }
    if (node.terminal_name.empty() && !used_names.insert(name).second) {
      throw StructureError("duplicate terminal name " + Quote(name));
    }
    node.terminal_name = name;
  }
  int next_name = 1;
  for (NodeIndex i = 0; i < static_cast<NodeIndex>(n); ++i) {
    Node& node = g.nodes_[i];
    if (!node.terminal()) continue;
    if (node.terminal_name.empty()) {
      std::string candidate;
      do {
        candidate = "z" + std::to_string(next_name++);
      } while (used_names.count(candidate));
      used_names.insert(candidate);
      node.terminal_name = candidate;
    }
    g.terminals_.push_back(i);
    g.terminal_by_name_[node.terminal_name] = i;
  }

  // Movers and active players.
  for (Node& node : g.nodes_) {
    if (node.terminal()) continue;
    std::set<PlayerIndex> movers;
    std::vector<int> count(g.players_.size(), 0);
    for (NodeIndex c : node.children) {
      for (const auto& e : g.nodes_[c].move) {
        movers.insert(e.player);
        ++count[e.player];
      }
    }
    node.movers.assign(movers.begin(), movers.end());
    for (PlayerIndex p : node.movers) {
      if (count[p] == static_cast<int>(node.children.size())) {
        node.active.push_back(p);
      }
    }
  }

  // Information sets: explicit ones first, then singletons for the rest.
  struct Draft {
    std::string id;
    PlayerIndex owner;
    std::vector<NodeIndex> members;
  };
  std::vector<Draft> drafts;
  std::set<std::string> infoset_ids;
  std::map<std::pair<NodeIndex, PlayerIndex>, size_t> assigned;
  for (const PendingInfoset& k : infosets_) {
    if (k.id.empty()) throw StructureError("empty information set id");
    if (!infoset_ids.insert(k.id).second) {
      throw StructureError("duplicate information set id " + Quote(k.id));
    }
    if (k.members.empty()) {
      throw StructureError("information set " + Quote(k.id) + " is empty");
    }
    Draft d{k.id, player_index(k.player), {}};
    for (const auto& m : k.members) {
      auto it = g.node_by_id_.find(m);
      if (it == g.node_by_id_.end()) {
        throw StructureError("information set " + Quote(k.id) +
                             " lists unknown node " + Quote(m));
      }
      if (!assigned.emplace(std::make_pair(it->second, d.owner), drafts.size())
               .second) {
        throw StructureError("node " + Quote(m) +
                             " is in two information sets of player " +
                             Quote(k.player));
      }
      d.members.push_back(it->second);
    }
    drafts.push_back(std::move(d));
  }
  for (NodeIndex i = 0; i < static_cast<NodeIndex>(n); ++i) {
    for (PlayerIndex p : g.nodes_[i].movers) {
      if (assigned.count({i, p})) continue;
      std::string id = g.players_[p] + "@" + g.nodes_[i].id;
      while (infoset_ids.count(id)) id += "'";
      infoset_ids.insert(id);
      assigned[{i, p}] = drafts.size();
      drafts.push_back(Draft{id, p, {i}});
    }
  }
  for (Draft& d : drafts) std::sort(d.members.begin(), d.members.end());
  std::vector<size_t> draft_order(drafts.size());
  for (size_t i = 0; i < drafts.size(); ++i) draft_order[i] = i;
  std::sort(draft_order.begin(), draft_order.end(), [&](size_t a, size_t b) {
    return std::tie(drafts[a].members.front(), drafts[a].owner) <
           std::tie(drafts[b].members.front(), drafts[b].owner);
  });
  std::vector<InfosetIndex> draft_to_index(drafts.size());
  g.player_infosets_.assign(g.players_.size(), {});
  for (size_t pos = 0; pos < draft_order.size(); ++pos) {
    Draft& d = drafts[draft_order[pos]];
    draft_to_index[draft_order[pos]] = static_cast<InfosetIndex>(pos);
    InfoSet k;
    k.id = d.id;
    k.owner = d.owner;
    k.members = d.members;
    std::set<std::string> actions;
    for (NodeIndex m : k.members) {
      for (NodeIndex c : g.nodes_[m].children) {
        for (const auto& e : g.nodes_[c].move) {
          if (e.player == k.owner) actions.insert(e.action);
        }
      }
    }
    k.actions.assign(actions.begin(), actions.end());
    g.infoset_by_id_[k.id] = static_cast<InfosetIndex>(pos);
    g.player_infosets_[k.owner].push_back(static_cast<InfosetIndex>(pos));
    g.infosets_.push_back(std::move(k));
  }
  g.infoset_rank_.assign(g.infosets_.size(), 0);
  for (const auto& list : g.player_infosets_) {
    for (size_t r = 0; r < list.size(); ++r) {
      g.infoset_rank_[list[r]] = static_cast<int>(r);
    }
  }
  for (NodeIndex i = 0; i < static_cast<NodeIndex>(n); ++i) {
    Node& node = g.nodes_[i];
    for (PlayerIndex p : node.active) {
      node.infosets.push_back(draft_to_index[assigned.at({i, p})]);
    }
  }
  return g;
}

// --- Queries ----------------------------------------------------------------

std::vector<PlayerIndex> ActivePlayers(const Game& game, NodeIndex h) {
  const Node& n = game.node(h);
  if (n.terminal()) {
    throw QueryError("no active players at terminal " + Quote(n.id));
  }
  return n.active;
}

std::vector<NodeIndex> TerminalSet(const Game& game,
                                   std::span<const NodeIndex> nodes) {
  const auto& terms = game.terminals();
  std::vector<NodeIndex> out;
  for (NodeIndex h : nodes) {
    const Node& n = game.node(h);
    auto lo = std::lower_bound(terms.begin(), terms.end(), h);
    auto hi = std::lower_bound(lo, terms.end(), n.subtree_end);
    out.insert(out.end(), lo, hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeIndex> TerminalsAfterAction(const Game& game, InfosetIndex k,
                                            std::string_view display) {
  const InfoSet& set = game.infoset(k);
  if (game.ActionIndex(k, display) < 0) {
    throw QueryError("action " + Quote(display) +
                     " is not feasible at information set " + Quote(set.id));
  }
  std::vector<NodeIndex> roots;
  for (NodeIndex h : set.members) {
    for (NodeIndex c : game.node(h).children) {
      const std::string* a = game.ActionInMove(c, set.owner);
      if (a != nullptr && *a == display) roots.push_back(c);
    }
  }
  return TerminalSet(game, roots);
}

std::vector<RecordEntry> Record(const Game& game, PlayerIndex player,
                                NodeIndex h) {
  std::vector<RecordEntry> out;
  for (NodeIndex cur = h; game.node(cur).parent != kNoNode;
       cur = game.node(cur).parent) {
    const std::string* a = game.ActionInMove(cur, player);
    if (a == nullptr) continue;
    InfosetIndex k = game.InfosetAt(game.node(cur).parent, player);
    out.push_back(RecordEntry{k, *a});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::string> TerminalNames(const Game& game,
                                       std::span<const NodeIndex> nodes) {
  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (NodeIndex z : nodes) out.push_back(game.node(z).terminal_name);
  return out;
}

std::string MoveToString(const Game& game, const Move& move) {
  (void)game;
  if (move.size() == 1) return move.front().action;
  std::string out = "(";
  for (size_t k = 0; k < move.size(); ++k) {
    if (k) out += ",";
    out += move[k].action;
  }
  return out + ")";
}

// --- Validation -------------------------------------------------------------

bool ValidationReport::Has(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::ToString() const {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << "  [" << v.rule << "] " << v.subject << ": " << v.message << "\n";
  }
  return os.str();
}

ValidationReport Validate(const Game& game) {
  ValidationReport report;
  auto add = [&](std::string rule, std::string subject, std::string message) {
    report.violations.push_back(
        Violation{std::move(rule), std::move(subject), std::move(message)});
  };
  const auto& players = game.players();

  std::vector<bool> ever_active(players.size(), false);
  for (const Node& node : game.nodes()) {
    if (node.terminal()) continue;
    for (PlayerIndex p : node.active) ever_active[p] = true;
    if (node.movers != node.active) {
      add("move-domain", node.id,
          "child moves do not all assign actions to the same players");
    }
    if (node.active.empty()) {
      add("active-nonempty", node.id, "no player is active");
      continue;
    }
    size_t product = 1;
    for (PlayerIndex p : node.active) {
      std::set<std::string> feasible;
      for (NodeIndex c : node.children) {
        feasible.insert(*game.ActionInMove(c, p));
      }
      if (feasible.size() < 2) {
        add("min-actions", node.id,
            "player " + Quote(players[p]) + " has " +
                std::to_string(feasible.size()) +
                " feasible action(s); an active player needs at least 2");
      }
      product *= feasible.size();
    }
    std::set<Move> distinct;
    for (NodeIndex c : node.children) distinct.insert(game.node(c).move);
    if (distinct.size() != node.children.size() ||
        node.children.size() != product) {
      add("product", node.id,
          "child moves are not the full product of the feasible action sets");
    }
  }
  for (size_t p = 0; p < players.size(); ++p) {
    if (!ever_active[p]) {
      add("player-inactive", players[p], "player is never active");
    }
  }

  for (InfosetIndex k = 0; k < static_cast<InfosetIndex>(game.infosets().size());
       ++k) {
    const InfoSet& set = game.infoset(k);
    bool members_ok = true;
    for (NodeIndex h : set.members) {
      const Node& node = game.node(h);
      if (node.terminal() ||
          !std::binary_search(node.active.begin(), node.active.end(),
                              set.owner)) {
        add("infoset-member", set.id,
            "member " + Quote(node.id) + " is not a node where " +
                Quote(players[set.owner]) + " is active");
        members_ok = false;
      }
    }
    if (!members_ok) continue;
    for (NodeIndex h : set.members) {
      std::set<std::string> feasible;
      for (NodeIndex c : game.node(h).children) {
        feasible.insert(*game.ActionInMove(c, set.owner));
      }
      if (std::vector<std::string>(feasible.begin(), feasible.end()) !=
          set.actions) {
        add("measurability", set.id,
            "member " + Quote(game.node(h).id) +
                " offers a different action set");
      }
    }
    for (size_t a = 0; a < set.members.size(); ++a) {
      for (size_t b = a + 1; b < set.members.size(); ++b) {
        if (game.IsStrictAncestor(set.members[a], set.members[b])) {
          add("absent-mindedness", set.id,
              "member " + Quote(game.node(set.members[a]).id) +
                  " precedes member " + Quote(game.node(set.members[b]).id));
        }
      }
    }
    const auto first = Record(game, set.owner, set.members.front());
    for (size_t a = 1; a < set.members.size(); ++a) {
      if (Record(game, set.owner, set.members[a]) != first) {
        add("perfect-recall", set.id,
            "members " + Quote(game.node(set.members.front()).id) + " and " +
                Quote(game.node(set.members[a]).id) +
                " have different records for " + Quote(players[set.owner]));
      }
    }
  }
  return report;
}

void RequireValid(const Game& game) {
  ValidationReport report = Validate(game);
  if (!report.ok()) throw ValidationError(std::move(report));
}

}  // namespace egs
